#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "orbitlab/dynamics.hpp"
#include "orbitlab/heights.hpp"
#include "orbitlab/holonomic.hpp"
#include "orbitlab/structure.hpp"

namespace orbitlab {

using Json = nlohmann::ordered_json;

/// One input document may carry a dynamical system, a multiplicative
/// group, and/or a recurrence or ODE; each pipeline takes what it needs.
struct SystemDef {
    long dimension;
    std::vector<RatFunc> map;
    RatFunc observable;
    Point start;
};

struct GroupDef {
    std::vector<Rational> generators;
};

struct RecurrenceDef {
    std::vector<RatFunc1> coeffs;
    long shift = 0;
    std::vector<Rational> initial;
};

struct OdeDef {
    std::vector<Poly1> poly_coeffs;
    std::vector<Rational> initial;
};

struct ParsedInput {
    std::optional<SystemDef> system;
    std::optional<GroupDef> group;
    std::optional<RecurrenceDef> recurrence;
    std::optional<OdeDef> ode;
};

/// Parses the documented JSON grammar. Expression errors carry
/// line/column and the offending token.
ParsedInput parse_system(const std::string& text);

Json serialize_input(const ParsedInput& input);

// ---- report fragments (stable field order for byte-identical output) ----

Json rational_json(const Rational& x);
Json valvector_json(const ValVector& v);
Json extvalue_json(const ExtValue& v);
Json intmat_json(const IntMat& m);
Json intvec_json(const IntVec& v);
Json poly_json(const Poly1& p);
Json halt_json(const HaltRecord& h);
Json membership_json(const MembershipSet& set);
Json ap_decomposition_json(const APDecomposition& d);
Json growth_report_json(const GrowthReport& r);
Json torus_model_json(const TorusModel& m);

struct RunConfig {
    std::string command;
    std::string input_path;
    std::string output_path = "-";
    long horizon = 100;
    long l_max = 24;
    Rational eps = Rational(1, 20);
    Rational tail_fraction = Rational(1, 2);
    std::vector<long> windows;  // empty = derive from the horizon
    long digit_budget = 100000;
    std::string format = "json";  // json | csv

    void validate() const;
};

/// Runs one subcommand; returns the process exit code (0 success, 2 a
/// Fail(...) certificate, 1 errors) after writing the report.
int run(const RunConfig& config);

}  // namespace orbitlab
