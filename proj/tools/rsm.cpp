// rsm: experiment runner for Ramanujan sums, Eratosthenes/Wintner/Carmichael
// transforms, smooth summation, character formulas, the no-reef
// counterexample and Hardy-Littlewood correlation experiments.
//
// Exit codes: 0 ok, 1 identity/assertion failure, 2 usage or schema error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <json.hpp>

#include "rsm/builtins.hpp"
#include "rsm/characters.hpp"
#include "rsm/correlations.hpp"
#include "rsm/counterexample.hpp"
#include "rsm/decomposition.hpp"
#include "rsm/factored.hpp"
#include "rsm/ramanujan.hpp"
#include "rsm/smooth.hpp"
#include "rsm/transforms.hpp"

using json = nlohmann::ordered_json;
using namespace rsm;

namespace {

struct GlobalOpts {
    bool as_json = false;
    std::string out_path;
    int threads = 1;
    int64_t seed = 0;  // reserved for randomized corpora; recorded in manifests
    int64_t sieve_bound = 10000000;
    int64_t cutoff_min = 1 << 10;
    int64_t cutoff_max = 1 << 20;
    std::vector<int64_t> cutoffs() const { return doubling_cutoffs(cutoff_min, cutoff_max); }
};

// Tabular output: CSV (RFC 4180 quoting) or a JSON mirror with the same
// column names, stable key order.
class Table {
  public:
    explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
    void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

    static std::string quote(const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += '"';
            q += c;
        }
        q += '"';
        return q;
    }

    std::string csv() const {
        std::string out;
        for (size_t i = 0; i < header_.size(); ++i)
            out += (i ? "," : "") + quote(header_[i]);
        out += "\n";
        for (const auto& r : rows_) {
            for (size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + quote(r[i]);
            out += "\n";
        }
        return out;
    }

    std::string to_json() const {
        json arr = json::array();
        for (const auto& r : rows_) {
            json obj;
            for (size_t i = 0; i < header_.size() && i < r.size(); ++i) obj[header_[i]] = r[i];
            arr.push_back(obj);
        }
        return arr.dump(2) + "\n";
    }

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

void emit(const GlobalOpts& g, const std::string& text) {
    if (g.out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream f(g.out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output path " + g.out_path);
    f << text;
}

void emit_table(const GlobalOpts& g, const Table& t) { emit(g, g.as_json ? t.to_json() : t.csv()); }

std::string num(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string complex_str(const Complex& z) {
    return num(z.real()) + (z.imag() < 0 ? "-" : "+") + num(std::abs(z.imag())) + "i";
}

// ---------------------------------------------------------------------------
// correlation spec files
// ---------------------------------------------------------------------------

Value json_value(const json& v) {
    if (v.is_number_integer()) return Value(v.get<int64_t>());
    if (v.is_number_float()) return Value(v.get<double>());
    if (v.is_string()) {
        Rational r(v.get<std::string>());
        r.canonicalize();
        return Value(r);
    }
    throw std::invalid_argument("spec: unsupported value type");
}

// For the f role a builtin name is the function itself; for the g' role it
// names the divisor-sum generator, i.e. we take the builtin's Eratosthenes
// transform so that g is the named function.
ArithmeticFunction spec_function(const json& node, const std::string& role) {
    if (node.is_string()) {
        BuiltinFunction b = make_builtin(node.get<std::string>());
        return role == "g_prime" ? b.F_prime : b.F;
    }
    if (node.is_object()) {
        if (node.contains("indicator")) {
            int64_t n0 = node["indicator"].get<int64_t>();
            return ArithmeticFunction::from_rule(
                "indicator:" + std::to_string(n0),
                [n0](int64_t n) { return Value(n == n0 ? 1 : 0); });
        }
        if (node.contains("table")) {
            std::vector<Value> vals;
            for (const auto& v : node["table"]) vals.push_back(json_value(v));
            return ArithmeticFunction::from_finite_support(role + ":table", std::move(vals));
        }
    }
    throw std::invalid_argument("spec: " + role + " must be a builtin name or {indicator|table}");
}

CorrelationSpec load_spec(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open spec file " + path);
    json root;
    try {
        root = json::parse(f);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("spec parse error: " + std::string(e.what()));
    }
    for (const char* key : {"f", "g_prime", "Q", "N"})
        if (!root.contains(key))
            throw std::invalid_argument(std::string("spec: missing field ") + key);
    CorrelationSpec spec;
    spec.f = spec_function(root["f"], "f");
    spec.g_prime = spec_function(root["g_prime"], "g_prime");
    spec.Q = root["Q"].get<int64_t>();
    spec.N = root["N"].get<int64_t>();
    spec.validate();
    return spec;
}

// ---------------------------------------------------------------------------
// subcommand bodies
// ---------------------------------------------------------------------------

void partials_table(Table& t, int64_t q, const PartialLimit& pl) {
    for (size_t i = 0; i < pl.cutoffs.size(); ++i) {
        double inc = i == 0 ? pl.partials[0].abs() : (pl.partials[i] - pl.partials[i - 1]).abs();
        t.row({std::to_string(q), std::to_string(pl.cutoffs[i]), pl.partials[i].str(), num(inc)});
    }
}

// Per-q coefficient partials computed in parallel, merged in q order so the
// output stays byte-identical across thread counts.
template <typename PartialFn>
void emit_coefficient_table(const GlobalOpts& g, const std::vector<int64_t>& qs,
                            PartialFn&& partial) {
    std::vector<PartialLimit> results(qs.size());
    parallel_blocks(static_cast<int64_t>(qs.size()), g.threads, 1,
                    [&](int64_t, int64_t lo, int64_t hi) {
                        for (int64_t i = lo; i < hi; ++i) results[i] = partial(qs[i]);
                    });
    Table t({"q", "cutoff", "value", "increment"});
    for (size_t i = 0; i < qs.size(); ++i) partials_table(t, qs[i], results[i]);
    emit_table(g, t);
}

int cmd_wintner(const GlobalOpts& g, const std::string& fn, const std::vector<int64_t>& qs,
                int64_t P) {
    BuiltinFunction b = make_builtin(fn);
    if (P == 0) {
        emit_coefficient_table(
            g, qs, [&](int64_t q) { return wintner_partial(b.F_prime, q, g.cutoffs()); });
        return 0;
    }
    // P-smooth transform: partial sums over smooth d, plus a cutoff-0 row
    // carrying the exact Euler value when one exists.
    Table t({"q", "cutoff", "value", "increment"});
    for (int64_t q : qs) {
        partials_table(t, q, p_smooth_wintner_partial(b.F_prime, q, P, g.cutoff_max));
        Coefficient c = p_smooth_wintner(b.F_prime, q, P, g.cutoff_max);
        if (c.exact()) t.row({std::to_string(q), "0", c.value.str(), "0"});
    }
    emit_table(g, t);
    return 0;
}

int cmd_carmichael(const GlobalOpts& g, const std::string& fn, const std::vector<int64_t>& qs,
                   int64_t P) {
    BuiltinFunction b = make_builtin(fn);
    ArithmeticFunction F = b.F;
    if (P != 0) {
        // averages of the smooth restriction F_(P)
        auto fp = b.F_prime;
        F = ArithmeticFunction::from_rule(
            b.name + "_(" + std::to_string(P) + ")",
            [fp, P](int64_t a) { return smooth_restriction(fp, P, a); });
        if (b.F.complex_valued()) F.mark_complex_valued();
    }
    emit_coefficient_table(g, qs, [&](int64_t q) { return carmichael_partial(F, q, g.cutoffs()); });
    return 0;
}

int cmd_hypotheses(const GlobalOpts& g, const std::string& fn, int64_t X,
                   const std::vector<int64_t>& ladder) {
    BuiltinFunction b = make_builtin(fn);
    HypothesisReport rep = hypothesis_report(b.F_prime, X, ladder);
    Table t({"series", "cutoff", "value", "increment"});
    auto add = [&](const std::string& name, const PartialLimit& pl) {
        for (size_t i = 0; i < pl.cutoffs.size(); ++i) {
            double inc =
                i == 0 ? pl.partials[0].abs() : (pl.partials[i] - pl.partials[i - 1]).abs();
            t.row({name, std::to_string(pl.cutoffs[i]), pl.partials[i].str(), num(inc)});
        }
    };
    add("WA", rep.wa);
    add("DH", rep.dh);
    add("ETD", rep.etd);
    for (const auto& [P, pl] : rep.wsa) add("WSA(P=" + std::to_string(P) + ")", pl);
    emit_table(g, t);
    return 0;
}

// Wintner coefficients of a builtin as smooth-summation input:
// Win_q = Win_1 * prod_{p^e || q} tail(p, e)/tail(p, 0), the ratios exact,
// the constant Win_1 a truncated partial sum (exact for finite support).
RamanujanCoefficients builtin_coefficients(const BuiltinFunction& b, int64_t X) {
    const ArithmeticFunction& fp = b.F_prime;
    if (fp.finite_support_bound()) {
        auto f = fp;
        return RamanujanCoefficients::from_rule([f](int64_t q) {
            Value sum(0);
            for (int64_t d = q; d <= *f.finite_support_bound(); d += q) sum += f(d) / Value(d);
            return sum;
        });
    }
    if (!fp.local() || !fp.multiplicative())
        throw std::invalid_argument("builtin coefficients need exact local data: " + b.name);
    Value win1 = wintner_partial(fp, 1, X).last();
    auto f = fp;
    return RamanujanCoefficients::multiplicative(win1, [f](int64_t p, int K) {
        Rational r = f.local()->tail(p, K) / f.local()->tail(p, 0);
        r.canonicalize();
        return Value(r);
    });
}

RamanujanCoefficients parse_coeff(const std::string& desc, int64_t X) {
    auto colon = desc.find(':');
    std::string head = desc.substr(0, colon);
    if (head == "const") {
        if (colon == std::string::npos)
            throw std::invalid_argument("coeff const needs a value, e.g. const:3/2");
        Rational r(desc.substr(colon + 1));
        r.canonicalize();
        return RamanujanCoefficients::constant(Value(r));
    }
    if (head == "table") {
        if (colon == std::string::npos) throw std::invalid_argument("coeff table needs a path");
        std::ifstream f(desc.substr(colon + 1));
        if (!f) throw std::invalid_argument("cannot open coefficient table");
        json root = json::parse(f);
        auto entries = std::make_shared<std::map<int64_t, Value>>();
        for (auto it = root.begin(); it != root.end(); ++it)
            (*entries)[std::stoll(it.key())] = json_value(it.value());
        return RamanujanCoefficients::from_rule([entries](int64_t q) {
            auto it = entries->find(q);
            return it == entries->end() ? Value(0) : it->second;
        });
    }
    if (head == "builtin") return builtin_coefficients(make_builtin(desc.substr(colon + 1)), X);
    throw std::invalid_argument("coeff must be const:C, table:file or builtin:name");
}

int cmd_smoothsum(const GlobalOpts& g, const std::string& coeff, int64_t a, int64_t P) {
    Value v = smooth_ramanujan_sum(parse_coeff(coeff, g.cutoff_max), a, P);
    Table t({"a", "P", "value"});
    t.row({std::to_string(a), std::to_string(P), v.str()});
    emit_table(g, t);
    return 0;
}

int cmd_irr(const GlobalOpts& g, const std::string& fn, const std::vector<int64_t>& ds, int64_t P,
            int64_t X) {
    BuiltinFunction b = make_builtin(fn);
    Table t({"d", "P", "cutoff", "value", "residual"});
    for (int64_t d : ds) {
        PartialLimit pl = irregular_series(b.F_prime, d, P, X);
        for (size_t i = 0; i < pl.cutoffs.size(); ++i)
            t.row({std::to_string(d), std::to_string(P), std::to_string(pl.cutoffs[i]),
                   pl.partials[i].str(), num(pl.last_increment())});
    }
    emit_table(g, t);
    return 0;
}

// Wintner table for a builtin: exact finite sums for finitely supported F',
// Win_1-scaled exact ratios for multiplicative F' with local data, truncated
// partial sums otherwise.
CoefficientTable builtin_win_table(const BuiltinFunction& b, int64_t q_max, int64_t X) {
    CoefficientTable win(TransformKind::wintner);
    const ArithmeticFunction& fp = b.F_prime;
    if (fp.finite_support_bound()) {
        auto f = fp;
        win.set_rule([f](int64_t q) {
            Value sum(0);
            for (int64_t d = q; d <= *f.finite_support_bound(); d += q) sum += f(d) / Value(d);
            return Coefficient{sum, std::nullopt};
        });
        return win;
    }
    if (fp.multiplicative() && fp.local()) {
        Value win1 = wintner_partial(fp, 1, X).last();
        auto f = fp;
        win.set_rule([f, win1, X](int64_t q) {
            Rational ratio(1);
            for (const auto& [p, e] : factor(q).factors)
                ratio *= f.local()->tail(p, e) / f.local()->tail(p, 0);
            ratio.canonicalize();
            return Coefficient{win1 * Value(ratio), X};
        });
        return win;
    }
    for (int64_t q = 1; q <= q_max; ++q)
        win.set(q, Coefficient{wintner_partial(fp, q, X).last(), X});
    return win;
}

int cmd_decomp(const GlobalOpts& g, const std::string& fn, int64_t d, int64_t a, int64_t P,
               int64_t X) {
    BuiltinFunction b = make_builtin(fn);
    CoefficientTable win(TransformKind::wintner);
    auto fp = b.F_prime;
    int64_t cutoff = X;
    win.set_rule([fp, cutoff](int64_t q) {
        return Coefficient{wintner_partial(fp, q, cutoff).last(), cutoff};
    });
    Table t({"d_or_a", "P", "cutoff", "value", "residual"});
    if (d >= 1) {
        Value r = transform_decomposition_residual(b.F_prime, win, d, P, X);
        t.row({std::to_string(d), std::to_string(P), std::to_string(X), b.F_prime(d).str(),
               r.str()});
    }
    if (a >= 1) {
        Value r = expansion_decomposition_residual(b.F, b.F_prime, win, a, P, X);
        t.row({std::to_string(a), std::to_string(P), std::to_string(X), b.F(a).str(), r.str()});
    }
    emit_table(g, t);
    return 0;
}

int cmd_fai(const GlobalOpts& g, const std::string& fn, int64_t Q, int64_t A, int64_t X) {
    BuiltinFunction b = make_builtin(fn);
    CoefficientTable table = builtin_win_table(b, Q, X);
    CoefficientTable scan(TransformKind::wintner);
    for (int64_t q = 1; q <= Q; ++q)
        if (table.has(q)) scan.set(q, table.at(q));
    FinWinRecord rec = detect_fin_win(scan, Q);
    FaiSplit split = fai_split(b.F_prime, rec);
    Table t({"a", "P", "cutoff", "value", "residual"});
    for (int64_t a = 1; a <= A; ++a) {
        Value analytic = split.analytic_at(a);
        Value irr = split.irregular(a);
        Value residual = analytic - irr - b.F(a);
        t.row({std::to_string(a), std::to_string(rec.prime()), std::to_string(X),
               (analytic - irr).str(), residual.str()});
    }
    emit_table(g, t);
    return 0;
}

int cmd_reef(const GlobalOpts& g, const std::string& spec_path, const std::string& fn, int64_t Q,
             int64_t A, int64_t X) {
    Table t({"a", "P", "cutoff", "value", "residual"});
    if (!spec_path.empty()) {
        CorrelationSpec spec = load_spec(spec_path);
        for (int64_t a = 1; a <= A; ++a) {
            Value e = error_term(spec, a);
            t.row({std::to_string(a), "-", std::to_string(spec.N), correlate(spec, a).str(),
                   e.str()});
        }
    } else {
        BuiltinFunction b = make_builtin(fn);
        CoefficientTable win(TransformKind::wintner);
        for (int64_t q = 1; q <= Q; ++q)
            win.set(q, Coefficient{wintner_partial(b.F_prime, q, X).last(), X});
        ReefReport rep = reef_check(b.F, win, Q, A);
        for (int64_t a = 1; a <= A; ++a)
            t.row({std::to_string(a), "-", std::to_string(X), b.F(a).str(),
                   rep.residuals[a - 1].str()});
    }
    emit_table(g, t);
    return 0;
}

int cmd_correlate(const GlobalOpts& g, const std::string& spec_path, int64_t a_max) {
    CorrelationSpec spec = load_spec(spec_path);
    Table t({"a", "value"});
    for (int64_t a = 1; a <= a_max; ++a) t.row({std::to_string(a), correlate(spec, a).str()});
    emit_table(g, t);
    return 0;
}

int cmd_error(const GlobalOpts& g, const std::string& spec_path, int64_t a_max) {
    CorrelationSpec spec = load_spec(spec_path);
    Table t({"a", "correlation", "reef_rhs", "error"});
    for (int64_t a = 1; a <= a_max; ++a) {
        Value c = correlate(spec, a), r = reef_rhs(spec, a);
        t.row({std::to_string(a), c.str(), r.str(), (c - r).str()});
    }
    emit_table(g, t);
    return 0;
}

int cmd_singular(const GlobalOpts& g, const std::vector<int64_t>& shifts,
                 const std::string& method, int64_t bound) {
    Table t({"two_k", "method", "bound", "value"});
    for (int64_t s : shifts) {
        if (method == "product" || method == "both")
            t.row({std::to_string(s), "product", std::to_string(bound),
                   num(singular_series(s, SingularSeriesMethod::product, bound))});
        if (method == "series" || method == "both")
            t.row({std::to_string(s), "series", std::to_string(bound),
                   num(singular_series(s, SingularSeriesMethod::series, bound))});
    }
    emit_table(g, t);
    return 0;
}

int cmd_hl(const GlobalOpts& g, int64_t N, const std::vector<int64_t>& shifts,
           int64_t singular_bound) {
    Table t({"two_k", "c_lambda_lambda", "c_lambda_lambda_trunc", "singular_times_n", "ratio",
             "trunc_gap", "trunc_gap_ratio"});
    for (const HlRow& r : hl_experiment(N, shifts, singular_bound, g.threads))
        t.row({std::to_string(r.shift), num(r.corr_lambda), num(r.corr_lambda_trunc),
               num(r.singular_times_n), num(r.ratio), num(r.trunc_gap), num(r.trunc_gap_ratio)});
    emit_table(g, t);
    return 0;
}

int cmd_chars(const GlobalOpts& g, int64_t q) {
    CharacterGroup group(q);
    Table t({"chi_index", "n", "re", "im"});
    for (int64_t i = 0; i < group.size(); ++i) {
        DirichletCharacter chi = group.character(i);
        for (int64_t n = 1; n <= q; ++n) {
            Complex z = chi(n);
            t.row({std::to_string(i), std::to_string(n), num(z.real()), num(z.imag())});
        }
    }
    emit_table(g, t);
    return 0;
}

int cmd_gauss(const GlobalOpts& g, int64_t q) {
    CharacterGroup group(q);
    Table t({"chi_index", "re", "im", "abs"});
    for (int64_t i = 0; i < group.size(); ++i) {
        Complex tau = gauss_sum(group.character(i));
        t.row({std::to_string(i), num(tau.real()), num(tau.imag()), num(std::abs(tau))});
    }
    emit_table(g, t);
    return 0;
}

int cmd_theorem5(const GlobalOpts& g, int64_t q, int64_t j, int64_t l, int64_t P,
                 const std::string& method) {
    Table t({"q", "j", "l", "P", "method", "value", "two_route_gap"});
    Complex a = exp_p_smooth_coefficient(q, j, l, P, ExpCoefficientMethod::lemma8);
    Complex b = exp_p_smooth_coefficient(q, j, l, P, ExpCoefficientMethod::theorem5);
    std::string gap = num(std::abs(a - b));
    if (method == "lemma8" || method == "both")
        t.row({std::to_string(q), std::to_string(j), std::to_string(l), std::to_string(P),
               "lemma8", complex_str(a), gap});
    if (method == "theorem5" || method == "both")
        t.row({std::to_string(q), std::to_string(j), std::to_string(l), std::to_string(P),
               "theorem5", complex_str(b), gap});
    emit_table(g, t);
    return 0;
}

int cmd_error_chars(const GlobalOpts& g, const std::string& spec_path, int64_t a_max) {
    CorrelationSpec spec = load_spec(spec_path);
    Table t({"a", "re", "im", "direct", "abs_diff"});
    for (int64_t a = 1; a <= a_max; ++a) {
        Complex e = error_term_characters(spec, a);
        Value direct = error_term(spec, a);
        t.row({std::to_string(a), num(e.real()), num(e.imag()), direct.str(),
               num(std::abs(e - direct.to_complex()))});
    }
    emit_table(g, t);
    return 0;
}

int cmd_counterexample(const GlobalOpts& g, int64_t p0, int64_t dmax, int64_t a_max) {
    CounterexampleSpec spec{p0};
    spec.validate();
    json report;
    report["p0"] = p0;

    json closed_form = json::array();
    int64_t mismatches = 0;
    ArithmeticFunction F = ArithmeticFunction::from_rule(
        "F0", [spec](int64_t a) { return Value(f0(spec, a)); });
    ArithmeticFunction Fp_oracle = eratosthenes_transform(F, dmax);
    for (int64_t d = 1; d <= dmax; ++d) {
        int64_t closed = f0_prime(spec, d);
        int64_t inverted = static_cast<int64_t>(Fp_oracle(d).rat().get_d());
        if (closed != inverted) ++mismatches;
        if (d <= 50)
            closed_form.push_back({{"d", d}, {"f0_prime", closed}, {"mobius_inversion", inverted}});
    }
    report["closed_form_head"] = closed_form;
    report["closed_form_mismatches"] = mismatches;
    report["dmax"] = dmax;

    json cases = json::array();
    for (int64_t d = 2; d <= std::min<int64_t>(dmax, 60); ++d) {
        SCaseResult r = s_case(spec, d);
        cases.push_back({{"d", d},
                         {"case", r.c == SCase::zero ? 0 : (r.c == SCase::one ? 1 : 2)},
                         {"S", r.value},
                         {"forced_zero", r.forced_zero}});
    }
    report["cases_head"] = cases;

    ReefFailureReport reef = reef_failure_demo(spec, std::max<int64_t>(p0, 6), a_max);
    json residuals = json::array();
    for (size_t i = 0; i < reef.residuals.size(); ++i)
        residuals.push_back({{"a", static_cast<int64_t>(i + 1)},
                             {"residual", reef.residuals[i].str()}});
    report["reef_residuals"] = residuals;
    report["reef_residual_at_1"] = reef.residual_at_1.str();
    report["zero_residual_a"] = reef.zero_residual_a;

    MeanValueRow mv = mean_value_partial(spec, std::min<int64_t>(dmax, 20000));
    report["mean_value"] = {{"x", mv.x},
                            {"raw_mean", mv.raw_mean},
                            {"flat_scaled", mv.flat_scaled},
                            {"flat_count", mv.flat_count}};

    emit(g, report.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------------------
// CLI wiring
// ---------------------------------------------------------------------------

int run_app(const std::vector<std::string>& args);

int cmd_run_manifest(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open manifest " + path);
    json m;
    try {
        m = json::parse(f);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("manifest parse error: " + std::string(e.what()));
    }
    if (!m.is_object() || !m.contains("subcommand"))
        throw std::invalid_argument("manifest: missing subcommand");
    std::vector<std::string> args;
    args.push_back(m["subcommand"].get<std::string>());
    if (m.contains("args"))
        for (const auto& a : m["args"])
            args.push_back(a.is_string() ? a.get<std::string>() : a.dump());
    if (m.contains("parameters")) {
        if (!m["parameters"].is_object())
            throw std::invalid_argument("manifest: parameters must be an object");
        auto scalar = [](const json& v) {
            return v.is_string() ? v.get<std::string>() : v.dump();
        };
        for (auto it = m["parameters"].begin(); it != m["parameters"].end(); ++it) {
            if (it.value().is_boolean()) {
                if (it.value().get<bool>()) args.push_back("--" + it.key());
                continue;
            }
            args.push_back("--" + it.key());
            if (it.value().is_array())
                for (const auto& v : it.value()) args.push_back(scalar(v));
            else
                args.push_back(scalar(it.value()));
        }
    }
    if (m.contains("seed")) {
        args.push_back("--seed");
        args.push_back(std::to_string(m["seed"].get<int64_t>()));
    }
    if (m.contains("output")) {
        args.push_back("--out");
        args.push_back(m["output"].get<std::string>());
    }
    return run_app(args);
}

int run_app(const std::vector<std::string>& args) {
    CLI::App app{"Ramanujan expansions, smooth summation and correlation experiments"};
    app.require_subcommand(1);
    GlobalOpts g;
    app.add_flag("--json", g.as_json, "emit JSON instead of CSV");
    app.add_option("--out", g.out_path, "write output to a file");
    app.add_option("--threads", g.threads, "worker thread cap")->check(CLI::Range(1, 64));
    app.add_option("--seed", g.seed, "seed for randomized corpora (recorded, unused by builtins)");
    app.add_option("--sieve-bound", g.sieve_bound, "factorization table bound");
    app.add_option("--cutoff-min", g.cutoff_min, "first truncation cutoff");
    app.add_option("--cutoff-max", g.cutoff_max, "last truncation cutoff");

    // csum
    auto* csum = app.add_subcommand("csum", "Ramanujan sum c_q(a)");
    int64_t csum_q = 1, csum_a = 0;
    csum->add_option("q", csum_q)->required();
    csum->add_option("a", csum_a)->required();

    // wintner / carmichael
    std::string fn = "sigma-over-n";
    std::vector<int64_t> qs{1};
    auto* wint = app.add_subcommand("wintner", "Wintner coefficient partial sums");
    int64_t wint_P = 0;
    wint->add_option("--function", fn);
    wint->add_option("--q", qs);
    wint->add_option("--P", wint_P, "restrict to P-smooth indices (0 = classic)");
    auto* carm = app.add_subcommand("carmichael", "Carmichael coefficient partial averages");
    std::string carm_fn = "sigma-over-n";
    std::vector<int64_t> carm_qs{1};
    int64_t carm_P = 0;
    carm->add_option("--function", carm_fn);
    carm->add_option("--q", carm_qs);
    carm->add_option("--P", carm_P, "average the P-smooth restriction (0 = classic)");

    // hypotheses
    auto* hyp = app.add_subcommand("hypotheses", "WA/DH/ETD/WSA diagnostic partial sums");
    std::string hyp_fn = "sigma-over-n";
    int64_t hyp_X = 1 << 20;
    std::vector<int64_t> hyp_ladder{2, 3, 5, 7, 11, 13};
    hyp->add_option("--function", hyp_fn);
    hyp->add_option("--X", hyp_X);
    hyp->add_option("--P-ladder", hyp_ladder);

    // smoothsum
    auto* ssum = app.add_subcommand("smoothsum", "smooth Ramanujan series (exact finite sum)");
    std::string ss_coeff = "const:1";
    int64_t ss_a = 1, ss_P = 7;
    ssum->add_option("--coeff", ss_coeff, "const:C | table:file | builtin:name");
    ssum->add_option("--a", ss_a)->required();
    ssum->add_option("--P", ss_P)->required();

    // irr / decomp / fai / reef
    auto* irr = app.add_subcommand("irr", "irregular series partial sums");
    std::string irr_fn = "sigma-over-n";
    std::vector<int64_t> irr_d{1};
    int64_t irr_P = 7, irr_X = 1 << 20;
    irr->add_option("--function", irr_fn);
    irr->add_option("--d", irr_d);
    irr->add_option("--P", irr_P);
    irr->add_option("--X", irr_X);

    auto* dec = app.add_subcommand("decomp", "orthogonal decomposition residuals (7)/(8)");
    std::string dec_fn = "sigma-over-n";
    int64_t dec_d = 0, dec_a = 0, dec_P = 7, dec_X = 1 << 20;
    dec->add_option("--function", dec_fn);
    dec->add_option("--d", dec_d);
    dec->add_option("--a", dec_a);
    dec->add_option("--P", dec_P);
    dec->add_option("--X", dec_X);

    auto* fai = app.add_subcommand("fai", "analytic/irregular split of a fin-win function");
    std::string fai_fn = "one";
    int64_t fai_Q = 10, fai_A = 20, fai_X = 1 << 16;
    fai->add_option("--function", fai_fn);
    fai->add_option("--Q", fai_Q);
    fai->add_option("--A", fai_A);
    fai->add_option("--X", fai_X);

    auto* reef = app.add_subcommand("reef", "fixed-length expansion residuals");
    std::string reef_spec, reef_fn = "one";
    int64_t reef_Q = 10, reef_A = 20, reef_X = 1 << 16;
    reef->add_option("--spec", reef_spec, "correlation spec JSON");
    reef->add_option("--function", reef_fn);
    reef->add_option("--Q", reef_Q);
    reef->add_option("--a-max", reef_A);
    reef->add_option("--X", reef_X);

    // correlate / error / singular / hl
    auto* corr = app.add_subcommand("correlate", "direct correlation values");
    std::string corr_spec;
    int64_t corr_amax = 10;
    corr->add_option("--spec", corr_spec)->required();
    corr->add_option("--a-max", corr_amax);

    auto* err = app.add_subcommand("error", "correlation error term (direct route)");
    std::string err_spec;
    int64_t err_amax = 10;
    err->add_option("--spec", err_spec)->required();
    err->add_option("--a-max", err_amax);

    auto* sing = app.add_subcommand("singular", "Hardy-Littlewood singular series");
    std::vector<int64_t> sing_shifts{2};
    std::string sing_method = "both";
    int64_t sing_bound = 1000000;
    sing->add_option("--two-k", sing_shifts);
    sing->add_option("--method", sing_method)->check(CLI::IsMember({"product", "series", "both"}));
    sing->add_option("--bound", sing_bound);

    auto* hl = app.add_subcommand("hl", "von Mangoldt autocorrelation experiment");
    int64_t hl_N = 100000, hl_bound = 1000000;
    std::vector<int64_t> hl_shifts{2, 4, 6, 8};
    hl->add_option("--N", hl_N);
    hl->add_option("--shifts", hl_shifts);
    hl->add_option("--singular-bound", hl_bound);

    // chars / gauss / theorem5 / error-chars
    auto* chars = app.add_subcommand("chars", "Dirichlet character table mod q");
    int64_t chars_q = 1;
    chars->add_option("q", chars_q)->required();

    auto* gauss = app.add_subcommand("gauss", "Gauss sums of all characters mod q");
    int64_t gauss_q = 1;
    gauss->add_option("q", gauss_q)->required();

    auto* th5 = app.add_subcommand("theorem5", "P-smooth coefficients of e_q(j.)");
    int64_t t5_q = 5, t5_j = 2, t5_l = 5, t5_P = 11;
    std::string t5_method = "both";
    th5->add_option("--q", t5_q)->required();
    th5->add_option("--j", t5_j)->required();
    th5->add_option("--l", t5_l)->required();
    th5->add_option("--P", t5_P)->required();
    th5->add_option("--method", t5_method)
        ->check(CLI::IsMember({"lemma8", "theorem5", "both"}));

    auto* echars = app.add_subcommand("error-chars", "error term via the characters formula");
    std::string ec_spec;
    int64_t ec_amax = 10;
    echars->add_option("--spec", ec_spec)->required();
    echars->add_option("--a-max", ec_amax);

    auto* ce = app.add_subcommand("counterexample", "full study of the no-reef correlation");
    int64_t ce_p0 = 5, ce_dmax = 10000, ce_amax = 20;
    ce->add_option("--p0", ce_p0)->required();
    ce->add_option("--dmax", ce_dmax);
    ce->add_option("--a-max", ce_amax);

    auto* runm = app.add_subcommand("run", "run a manifest (reproducible experiment)");
    std::string manifest_path;
    runm->add_option("manifest", manifest_path)->required();

    for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; }))
        sub->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    set_default_sieve_bound(g.sieve_bound);

    if (csum->parsed()) {
        int64_t v = ramanujan_sum(csum_q, csum_a);
        if (ramanujan_sum_hoelder(csum_q, csum_a) != v)
            throw std::logic_error("csum: Kluyver and Hoelder disagree");
        if (g.as_json) {
            json out{{"q", csum_q}, {"a", csum_a}, {"value", v}};
            emit(g, out.dump(2) + "\n");
        } else {
            emit(g, "c_" + std::to_string(csum_q) + "(" + std::to_string(csum_a) +
                        ") = " + std::to_string(v) + "\n");
        }
        return 0;
    }
    if (wint->parsed()) return cmd_wintner(g, fn, qs, wint_P);
    if (carm->parsed()) return cmd_carmichael(g, carm_fn, carm_qs, carm_P);
    if (hyp->parsed()) return cmd_hypotheses(g, hyp_fn, hyp_X, hyp_ladder);
    if (ssum->parsed()) return cmd_smoothsum(g, ss_coeff, ss_a, ss_P);
    if (irr->parsed()) return cmd_irr(g, irr_fn, irr_d, irr_P, irr_X);
    if (dec->parsed()) return cmd_decomp(g, dec_fn, dec_d, dec_a, dec_P, dec_X);
    if (fai->parsed()) return cmd_fai(g, fai_fn, fai_Q, fai_A, fai_X);
    if (reef->parsed()) return cmd_reef(g, reef_spec, reef_fn, reef_Q, reef_A, reef_X);
    if (corr->parsed()) return cmd_correlate(g, corr_spec, corr_amax);
    if (err->parsed()) return cmd_error(g, err_spec, err_amax);
    if (sing->parsed()) return cmd_singular(g, sing_shifts, sing_method, sing_bound);
    if (hl->parsed()) return cmd_hl(g, hl_N, hl_shifts, hl_bound);
    if (chars->parsed()) return cmd_chars(g, chars_q);
    if (gauss->parsed()) return cmd_gauss(g, gauss_q);
    if (th5->parsed()) return cmd_theorem5(g, t5_q, t5_j, t5_l, t5_P, t5_method);
    if (echars->parsed()) return cmd_error_chars(g, ec_spec, ec_amax);
    if (ce->parsed()) return cmd_counterexample(g, ce_p0, ce_dmax, ce_amax);
    if (runm->parsed()) return cmd_run_manifest(manifest_path);
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return run_app(args);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::out_of_range& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::logic_error& e) {
        std::fprintf(stderr, "assertion failed: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
