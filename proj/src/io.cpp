#include "orbitlab/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "orbitlab/expr.hpp"

namespace orbitlab {

namespace {

std::vector<std::string> variable_names(long n) {
    std::vector<std::string> names;
    for (long i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    return names;
}

}  // namespace

ParsedInput parse_system(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::SyntaxError, std::string("JSON parse error: ") + e.what());
    }
    ParsedInput input;

    if (doc.contains("map")) {
        SystemDef sys;
        const Json& map = doc.at("map");
        if (!map.is_array() || map.empty())
            throw Error(ErrorCode::BadInput, "\"map\" must be a nonempty array");
        sys.dimension = doc.contains("dim") ? doc.at("dim").get<long>()
                                            : static_cast<long>(map.size());
        if (sys.dimension != static_cast<long>(map.size()))
            throw Error(ErrorCode::DimensionMismatch, "\"dim\" disagrees with the map arity");
        auto names = variable_names(sys.dimension);
        for (const auto& coord : map)
            sys.map.push_back(parse_expression(coord.get<std::string>(), names));
        std::string obs = doc.contains("observable") ? doc.at("observable").get<std::string>() : "x1";
        sys.observable = parse_expression(obs, names);
        if (!doc.contains("start"))
            throw Error(ErrorCode::BadInput, "system definition needs \"start\"");
        for (const auto& coord : doc.at("start"))
            sys.start.push_back(parse_constant(coord.get<std::string>()));
        if (static_cast<long>(sys.start.size()) != sys.dimension)
            throw Error(ErrorCode::DimensionMismatch, "start point has the wrong dimension");
        input.system = std::move(sys);
    }

    if (doc.contains("generators")) {
        GroupDef g;
        for (const auto& gen : doc.at("generators"))
            g.generators.push_back(parse_constant(gen.get<std::string>()));
        input.group = std::move(g);
    }

    if (doc.contains("coeffs")) {
        RecurrenceDef rec;
        for (const auto& c : doc.at("coeffs"))
            rec.coeffs.push_back(parse_ratfunc1(c.get<std::string>(), "n"));
        if (doc.contains("order") &&
            doc.at("order").get<long>() != static_cast<long>(rec.coeffs.size()) - 1)
            throw Error(ErrorCode::BadInput, "\"order\" disagrees with the coefficient count");
        rec.shift = doc.contains("shift") ? doc.at("shift").get<long>() : 0;
        if (!doc.contains("init"))
            throw Error(ErrorCode::BadInput, "recurrence definition needs \"init\"");
        for (const auto& a : doc.at("init"))
            rec.initial.push_back(parse_constant(a.get<std::string>()));
        input.recurrence = std::move(rec);
    }

    if (doc.contains("poly_coeffs")) {
        OdeDef ode;
        for (const auto& c : doc.at("poly_coeffs")) {
            RatFunc1 f = parse_ratfunc1(c.get<std::string>(), "x");
            if (f.den().degree() != 0)
                throw Error(ErrorCode::BadInput, "ODE coefficients must be polynomials");
            ode.poly_coeffs.push_back(f.num() * (Rational(1) / f.den().coeff(0)));
        }
        if (!doc.contains("init"))
            throw Error(ErrorCode::BadInput, "ODE definition needs \"init\"");
        for (const auto& a : doc.at("init"))
            ode.initial.push_back(parse_constant(a.get<std::string>()));
        input.ode = std::move(ode);
    }

    if (!input.system && !input.group && !input.recurrence && !input.ode)
        throw Error(ErrorCode::BadInput, "input defines no system, group, recurrence, or ODE");
    return input;
}

Json serialize_input(const ParsedInput& input) {
    Json doc = Json::object();
    if (input.system) {
        const SystemDef& sys = *input.system;
        auto names = variable_names(sys.dimension);
        doc["dim"] = sys.dimension;
        Json map = Json::array();
        for (const RatFunc& f : sys.map) map.push_back(ratfunc_to_string(f, names));
        doc["map"] = std::move(map);
        doc["observable"] = ratfunc_to_string(sys.observable, names);
        Json start = Json::array();
        for (const Rational& x : sys.start) start.push_back(rational_to_string(x));
        doc["start"] = std::move(start);
    }
    if (input.group) {
        Json gens = Json::array();
        for (const Rational& g : input.group->generators) gens.push_back(rational_to_string(g));
        doc["generators"] = std::move(gens);
    }
    if (input.recurrence) {
        const RecurrenceDef& rec = *input.recurrence;
        doc["order"] = static_cast<long>(rec.coeffs.size()) - 1;
        Json coeffs = Json::array();
        for (const RatFunc1& c : rec.coeffs) coeffs.push_back(c.to_string("n"));
        doc["coeffs"] = std::move(coeffs);
        doc["shift"] = rec.shift;
        Json init = Json::array();
        for (const Rational& a : rec.initial) init.push_back(rational_to_string(a));
        doc["init"] = std::move(init);
    }
    if (input.ode) {
        Json coeffs = Json::array();
        for (const Poly1& c : input.ode->poly_coeffs) coeffs.push_back(c.to_string("x"));
        doc["poly_coeffs"] = std::move(coeffs);
        Json init = Json::array();
        for (const Rational& a : input.ode->initial) init.push_back(rational_to_string(a));
        doc["init"] = std::move(init);
    }
    return doc;
}

Json rational_json(const Rational& x) { return rational_to_string(x); }

Json valvector_json(const ValVector& v) {
    Json j = Json::object();
    j["sign"] = v.sign;
    Json exps = Json::object();
    for (const auto& [p, e] : v.exponents) exps[p.get_str()] = e;
    j["exponents"] = std::move(exps);
    return j;
}

Json extvalue_json(const ExtValue& v) {
    if (v.infinite) return "inf";
    return rational_to_string(v.value);
}

Json intmat_json(const IntMat& m) {
    Json rows = Json::array();
    for (long i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (long j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
        rows.push_back(std::move(row));
    }
    return rows;
}

Json intvec_json(const IntVec& v) {
    Json row = Json::array();
    for (const Integer& x : v) row.push_back(x.get_str());
    return row;
}

Json poly_json(const Poly1& p) {
    Json coeffs = Json::array();
    for (long k = 0; k <= p.degree(); ++k) coeffs.push_back(rational_to_string(p.coeff(k)));
    return coeffs;
}

Json halt_json(const HaltRecord& h) {
    Json j = Json::object();
    switch (h.kind) {
        case HaltRecord::Kind::Completed: j["kind"] = "completed"; break;
        case HaltRecord::Kind::Indeterminate: j["kind"] = "indeterminate"; break;
        case HaltRecord::Kind::BudgetExceeded: j["kind"] = "budget_exceeded"; break;
    }
    j["step"] = h.step;
    if (h.kind == HaltRecord::Kind::Indeterminate) j["coordinate"] = h.coordinate;
    return j;
}

Json membership_json(const MembershipSet& set) {
    Json j = Json::object();
    j["n_max"] = set.n_max;
    Json members = Json::array();
    for (long n : set.members()) members.push_back(n);
    j["members"] = std::move(members);
    Json zeros = Json::array();
    for (long n = 0; n <= set.n_max; ++n)
        if (set.zero_bits[n]) zeros.push_back(n);
    j["zeros"] = std::move(zeros);
    // run-length encoding of the indicator, first run counts leading 0s
    Json rle = Json::array();
    long run = 0;
    bool value = false;
    for (long n = 0; n <= set.n_max; ++n) {
        if (set.bits[n] == value) {
            ++run;
        } else {
            rle.push_back(run);
            value = !value;
            run = 1;
        }
    }
    rle.push_back(run);
    j["rle"] = std::move(rle);
    return j;
}

Json ap_decomposition_json(const APDecomposition& d) {
    Json j = Json::object();
    j["period"] = d.period;
    j["tail_start"] = d.tail_start;
    Json labels = Json::array();
    for (ClassLabel l : d.labels) labels.push_back(class_label_name(l));
    j["labels"] = std::move(labels);
    Json dens = Json::array();
    for (const Rational& r : d.tail_densities) dens.push_back(rational_to_string(r));
    j["tail_densities"] = std::move(dens);
    Json exc = Json::array();
    for (long n : d.exceptional) exc.push_back(n);
    j["exceptional"] = std::move(exc);
    Json defi = Json::array();
    for (long n : d.deficiencies) defi.push_back(n);
    j["deficiencies"] = std::move(defi);
    j["overflow"] = d.overflow;
    return j;
}

Json growth_report_json(const GrowthReport& r) {
    Json j = Json::object();
    j["label"] = growth_class_name(r.label);
    j["horizon"] = r.horizon;
    j["ratio_linear"] = Json::array({r.ratio_linear_min, r.ratio_linear_max});
    j["ratio_nlogn"] = Json::array({r.ratio_nlogn_min, r.ratio_nlogn_max});
    j["ratio_quadratic"] = Json::array({r.ratio_quadratic_min, r.ratio_quadratic_max});
    return j;
}

Json torus_model_json(const TorusModel& m) {
    Json j = Json::object();
    j["dimension"] = m.a.rows();
    j["matrix"] = intmat_json(m.a);
    j["translation"] = intvec_json(m.p);
    j["initial"] = intvec_json(m.v0);
    j["output_functional"] = intvec_json(m.q);
    j["constant"] = rational_to_string(m.c);
    Json gens = Json::array();
    for (const Rational& g : m.group->generators()) gens.push_back(rational_to_string(g));
    j["generators"] = std::move(gens);
    return j;
}

void RunConfig::validate() const {
    if (horizon < 1) throw Error(ErrorCode::BadInput, "horizon must be >= 1");
    if (digit_budget < 1000) throw Error(ErrorCode::BadInput, "digit budget must be >= 1000");
    if (l_max < 1) throw Error(ErrorCode::BadInput, "l_max must be >= 1");
    if (eps <= 0 || eps >= Rational(1, 2))
        throw Error(ErrorCode::BadInput, "eps must lie in (0, 1/2)");
    if (format != "json" && format != "csv")
        throw Error(ErrorCode::BadInput, "format must be json or csv");
}

namespace {

void write_output(const RunConfig& config, const std::string& body) {
    if (config.output_path == "-") {
        std::cout << body;
        return;
    }
    std::ofstream out(config.output_path, std::ios::binary);
    if (!out) throw Error(ErrorCode::BadInput, "cannot open output path " + config.output_path);
    out << body;
}

Json report_header(const RunConfig& config) {
    Json j = Json::object();
    j["schema"] = 1;
    j["command"] = config.command;
    Json params = Json::object();
    params["n"] = config.horizon;
    params["lmax"] = config.l_max;
    params["eps"] = rational_to_string(config.eps);
    params["tail"] = rational_to_string(config.tail_fraction);
    params["budget"] = config.digit_budget;
    Json windows = Json::array();
    for (long w : config.windows) windows.push_back(w);
    params["windows"] = std::move(windows);
    params["format"] = config.format;
    j["params"] = std::move(params);
    return j;
}

struct ValueSource {
    std::vector<ExtValue> values;
    std::optional<HaltRecord> halt;  // only when a system orbit produced them
};

/// Values come from the dynamical system when one is given, else from
/// expanding the recurrence/ODE.
ValueSource produce_values(const ParsedInput& input, const RunConfig& config) {
    ValueSource src;
    if (input.system) {
        const SystemDef& sys = *input.system;
        RationalSelfMap map{sys.dimension, sys.map};
        OrbitRecord rec =
            orbit_sequence(map, sys.observable, sys.start, config.horizon, config.digit_budget);
        src.values = rec.values;
        src.halt = rec.halt;
        return src;
    }
    std::vector<Rational> terms;
    if (input.recurrence) {
        const RecurrenceDef& def = *input.recurrence;
        PRecurrence rec(def.coeffs, def.shift, def.initial);
        terms = expand(rec, config.horizon);
    } else if (input.ode) {
        DFiniteODE ode(input.ode->poly_coeffs, input.ode->initial);
        terms = expand(ode, config.horizon);
    } else {
        throw Error(ErrorCode::BadInput, "this command needs a system, recurrence, or ODE");
    }
    for (Rational& t : terms) src.values.push_back(ExtValue::finite(std::move(t)));
    return src;
}

MultSubgroup require_group(const ParsedInput& input) {
    if (!input.group) throw Error(ErrorCode::BadInput, "this command needs \"generators\"");
    return build_group(input.group->generators);
}

std::vector<Rational> finite_nonzero_values(const std::vector<ExtValue>& values) {
    std::vector<Rational> out;
    for (size_t n = 0; n < values.size(); ++n) {
        if (values[n].infinite)
            throw Error(ErrorCode::ZeroValue, "value at infinity", static_cast<long>(n));
        if (values[n].value == 0)
            throw Error(ErrorCode::ZeroValue, "zero value", static_cast<long>(n));
        out.push_back(values[n].value);
    }
    return out;
}

std::vector<long> default_windows(long horizon) {
    std::vector<long> w;
    for (long d : {8, 4, 2}) {
        long len = (horizon + 1) / d;
        if (len >= 1) w.push_back(len);
    }
    return w;
}

int run_orbit(const RunConfig& config, const ParsedInput& input, Json& report) {
    ValueSource src = produce_values(input, config);
    Json values = Json::array();
    for (const ExtValue& v : src.values) values.push_back(extvalue_json(v));
    report["values"] = std::move(values);
    if (src.halt) {
        report["halt"] = halt_json(*src.halt);
        if (src.halt->kind != HaltRecord::Kind::Completed) return 1;
    }
    return 0;
}

int run_member(const RunConfig& config, const ParsedInput& input, Json& report,
               std::string& csv) {
    MultSubgroup g = require_group(input);
    ValueSource src = produce_values(input, config);
    MembershipSet set = membership_set(src.values, g);
    report["membership"] = membership_json(set);
    std::vector<long> windows = config.windows.empty() ? default_windows(set.n_max)
                                                       : config.windows;
    Json dens = Json::object();
    for (long w : windows)
        if (w >= 1 && w <= set.n_max + 1)
            dens[std::to_string(w)] = rational_to_string(banach_density(set, w));
    report["window_densities"] = std::move(dens);
    report["decomposition"] =
        ap_decomposition_json(ap_decompose(set, config.l_max, config.eps, config.tail_fraction));
    if (src.halt) report["halt"] = halt_json(*src.halt);
    if (config.format == "csv") {
        std::ostringstream out;
        out << "n,member,zero\n";
        for (long n = 0; n <= set.n_max; ++n)
            out << n << "," << (set.bits[n] ? 1 : 0) << "," << (set.zero_bits[n] ? 1 : 0) << "\n";
        csv = out.str();
    }
    if (src.halt && src.halt->kind != HaltRecord::Kind::Completed) return 1;
    return 0;
}

int run_decompose(const RunConfig& config, const ParsedInput& input, Json& report) {
    MultSubgroup g = require_group(input);
    ValueSource src = produce_values(input, config);
    std::vector<Rational> values = finite_nonzero_values(src.values);
    ExponentTrajectories traj = exponent_trajectories(values, g);
    report["exponents"] = intmat_json(traj.rows);
    Json torsion = Json::array();
    for (int t : traj.torsion) torsion.push_back(t);
    report["torsion"] = std::move(torsion);
    return 0;
}

int run_depend(const RunConfig& config, const ParsedInput& input, Json& report) {
    MultSubgroup g = require_group(input);
    ValueSource src = produce_values(input, config);
    std::vector<Rational> values = finite_nonzero_values(src.values);
    long window = input.system ? input.system->dimension + 1 : 2;
    auto result = find_dependence(values, window, g.support());
    report["window"] = window;
    if (std::holds_alternative<DependenceRelation>(result)) {
        const auto& rel = std::get<DependenceRelation>(result);
        report["found"] = true;
        report["exponents"] = intvec_json(rel.exponents);
        report["constant"] = rational_to_string(rel.constant);
    } else {
        report["found"] = false;
    }
    return 0;
}

int run_torus(const RunConfig& config, const ParsedInput& input, Json& report) {
    MultSubgroup g = require_group(input);
    ValueSource src = produce_values(input, config);
    std::vector<Rational> values = finite_nonzero_values(src.values);
    auto model = assemble_torus_model(values, g);
    if (!model) {
        report["found"] = false;
        return 2;
    }
    report["found"] = true;
    report["model"] = torus_model_json(*model);
    TorusVerifyReport verify =
        verify_torus_model(*model, values, static_cast<long>(values.size()) - 1);
    Json vj = Json::object();
    vj["verified"] = verify.verified;
    vj["horizon"] = verify.horizon;
    if (!verify.verified) vj["first_failure"] = verify.first_failure;
    report["verification"] = std::move(vj);
    // word-length bound for the underlying torus construction, when the
    // exponent coordinates admit constant-coefficient annihilators
    long word_length = 0;
    for (long j = 0; j < model->a.rows() && word_length >= 0; ++j) {
        std::vector<Rational> coord;
        IntVec v = model->v0;
        for (size_t n = 0; n < values.size(); ++n) {
            coord.push_back(Rational(v[j]));
            IntVec next = model->a.apply(v);
            for (long i = 0; i < model->a.rows(); ++i) next[i] += model->p[i];
            v = std::move(next);
        }
        auto ann = min_cfinite_annihilator(coord);
        if (std::holds_alternative<CFiniteRecurrence>(ann))
            word_length = std::max(word_length, std::get<CFiniteRecurrence>(ann).order() + 1);
        else
            word_length = -1;
    }
    if (word_length > 0) report["word_length"] = word_length;
    return verify.verified ? 0 : 2;
}

int run_heights(const RunConfig& config, const ParsedInput& input, Json& report,
                std::string& csv) {
    ValueSource src = produce_values(input, config);
    std::vector<Rational> values = finite_nonzero_values(src.values);
    std::vector<Integer> heights = height_sequence(values);
    Json hj = Json::array();
    for (const Integer& h : heights) hj.push_back(h.get_str());
    report["heights"] = std::move(hj);
    Json lj = Json::array();
    for (const Integer& h : heights) lj.push_back(log_of_integer(h));
    report["log_heights"] = std::move(lj);
    if (heights.size() >= 32)
        report["growth"] =
            growth_report_json(growth_classify(heights, static_cast<long>(heights.size()) - 1));
    if (input.group) {
        MultSubgroup g = build_group(input.group->generators);
        Json vg = Json::object();
        for (const Integer& p : g.support().primes()) {
            ValuationGrowthReport r = valuation_growth(values, p);
            Json pj = Json::object();
            pj["tail_slope"] = rational_to_string(r.tail_slope);
            pj["linear_bound_holds"] = r.linear_bound_holds;
            pj["bound_c"] = rational_to_string(r.bound_c);
            pj["bound_b"] = rational_to_string(r.bound_b);
            if (!r.linear_bound_holds) pj["first_violation"] = r.first_violation;
            vg[p.get_str()] = std::move(pj);
        }
        report["valuation_growth"] = std::move(vg);
    }
    if (config.format == "csv") {
        std::ostringstream out;
        out << "n,height,log_height\n";
        for (size_t n = 0; n < heights.size(); ++n)
            out << n << "," << heights[n].get_str() << "," << log_of_integer(heights[n]) << "\n";
        csv = out.str();
    }
    return 0;
}

int run_certify(const RunConfig& config, const ParsedInput& input, Json& report) {
    MultSubgroup g = require_group(input);
    std::optional<PRecurrence> rec;
    if (input.recurrence)
        rec.emplace(input.recurrence->coeffs, input.recurrence->shift, input.recurrence->initial);
    else if (input.ode)
        rec.emplace(ode_to_recurrence(DFiniteODE(input.ode->poly_coeffs, input.ode->initial)));
    else
        throw Error(ErrorCode::BadInput, "certify needs a recurrence or an ODE");
    long n = std::max(config.horizon, 4 * config.l_max + 8);
    CertifyResult result = certify_rational(*rec, g, n, config.l_max);
    if (std::holds_alternative<CertifyFailure>(result)) {
        const auto& fail = std::get<CertifyFailure>(result);
        report["certified"] = false;
        report["stage"] = certify_stage_name(fail.stage);
        if (fail.index >= 0) report["index"] = fail.index;
        return 2;
    }
    const auto& form = std::get<RationalClosedForm>(result);
    report["certified"] = true;
    report["numerator"] = poly_json(form.numerator);
    report["denominator"] = poly_json(form.denominator);
    report["period"] = form.period;
    report["preperiod_end"] = form.preperiod_end;
    report["verified_terms"] = form.verified_terms;
    report["shift"] = rec->shift();
    return 0;
}

}  // namespace

int run(const RunConfig& config) {
    config.validate();
    std::ifstream in(config.input_path);
    if (!in) throw Error(ErrorCode::BadInput, "cannot read input path " + config.input_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    ParsedInput input = parse_system(buffer.str());

    Json report = report_header(config);
    report["input"] = serialize_input(input);
    std::string csv;
    int code;
    if (config.command == "orbit")
        code = run_orbit(config, input, report);
    else if (config.command == "member")
        code = run_member(config, input, report, csv);
    else if (config.command == "decompose")
        code = run_decompose(config, input, report);
    else if (config.command == "depend")
        code = run_depend(config, input, report);
    else if (config.command == "torus")
        code = run_torus(config, input, report);
    else if (config.command == "heights")
        code = run_heights(config, input, report, csv);
    else if (config.command == "certify")
        code = run_certify(config, input, report);
    else
        throw Error(ErrorCode::BadInput, "unknown command " + config.command);

    if (config.format == "csv" && !csv.empty())
        write_output(config, csv);
    else
        write_output(config, report.dump(2) + "\n");
    return code;
}

}  // namespace orbitlab
