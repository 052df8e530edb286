// tmf3: command-line front end for the level-3 computations.
//
// Exit codes: 0 success, 1 domain error, 2 usage or syntax error,
// 3 verification failure.

#include "tmf3/expr.hpp"
#include "tmf3/funfield.hpp"
#include "tmf3/levelmaps.hpp"
#include "tmf3/qexp.hpp"
#include "tmf3/sseq.hpp"
#include "tmf3/verify.hpp"
#include "tmf3/weierstrass.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace tmf3;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kDomain = 1, kUsage = 2, kVerify = 3 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Output {
    std::string command;
    json inputs = json::object();
    json result;
    std::vector<Check> checks;
    std::string text;  // plain-text rendering

    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
};

json checks_json(const std::vector<Check>& checks) {
    json out = json::array();
    for (const auto& c : checks) out.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return out;
}

std::string check_line(const Check& c) {
    return std::string(c.pass ? "PASS  " : "FAIL  ") + c.name + (c.detail.empty() ? "" : "  [" + c.detail + "]");
}

// "[e1, e2, ...]" split at top-level commas; each piece is an expression.
std::vector<std::string> split_tuple(const std::string& text, std::size_t arity, const std::string& what) {
    std::size_t open = text.find_first_not_of(" \t");
    std::size_t close = text.find_last_not_of(" \t");
    if (open == std::string::npos || text[open] != '[' || text[close] != ']')
        throw UsageError(what + " must be written [" + std::string(arity == 2 ? "x,y" : "a1,a2,a3,a4,a6") + "]");
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (std::size_t i = open + 1; i < close; ++i) {
        char ch = text[i];
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    if (parts.size() != arity)
        throw UsageError(what + " needs " + std::to_string(arity) + " entries, got " + std::to_string(parts.size()));
    return parts;
}

MultiPoly as_poly(const Value& v, const std::string& what) {
    if (const auto* r = std::get_if<Rational>(&v)) return MultiPoly(*r);
    if (const auto* g = std::get_if<LocElem>(&v); g && g->is_polynomial()) return g->num();
    throw DomainError(what + ": expected a polynomial in a1, a3, got " + to_string(v));
}

Rational as_rational(const Value& v, const std::string& what) {
    if (const auto* r = std::get_if<Rational>(&v)) return *r;
    throw DomainError(what + ": expected a rational number, got " + to_string(v));
}

WCurve<MultiPoly> parse_curve(const std::string& text) {
    auto parts = split_tuple(text, 5, "curve");
    std::array<MultiPoly, 5> a;
    for (std::size_t i = 0; i < 5; ++i) a[i] = as_poly(evaluate(parts[i]), "curve coefficient");
    return {a[0], a[1], a[2], a[3], a[4]};
}

WCurve<Rational> rational_curve(const WCurve<MultiPoly>& c) {
    auto r = [](const MultiPoly& p) {
        if (!p.is_constant()) throw DomainError("curve must have rational coefficients here, got " + p.to_string());
        return p.is_zero() ? Rational(0) : p.terms().begin()->second;
    };
    return {r(c.a1), r(c.a2), r(c.a3), r(c.a4), r(c.a6)};
}

WPoint<Rational> parse_point(const std::string& text) {
    std::string t = text;
    t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char ch) { return std::isspace(ch); }), t.end());
    if (t == "O") return WPoint<Rational>::infinity();
    auto parts = split_tuple(text, 2, "point");
    return WPoint<Rational>::affine(as_rational(evaluate(parts[0]), "x"), as_rational(evaluate(parts[1]), "y"));
}

std::pair<long, long> parse_range(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos) throw UsageError("--range must be A..B");
    try {
        long a = std::stol(text.substr(0, dots)), b = std::stol(text.substr(dots + 2));
        if (a > b) throw UsageError("--range A..B needs A <= B");
        return {a, b};
    } catch (const std::logic_error&) {
        throw UsageError("--range must be A..B with integers A, B");
    }
}

Window parse_window(const std::string& text) {
    Window w;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> w.S >> c1 >> w.W >> c2 >> w.D) || c1 != ',' || c2 != ',' || !in.eof())
        throw UsageError("--window must be S,W,D");
    return w;
}

// ---------------------------------------------------------------------------
// Subcommands

Output cmd_invariants(const std::string& curve) {
    Output out{"invariants"};
    out.inputs["curve"] = curve;
    auto c = parse_curve(curve);
    auto inv = invariants(c);
    json r = {{"b2", inv.b2.to_string()}, {"b4", inv.b4.to_string()}, {"b6", inv.b6.to_string()},
              {"b8", inv.b8.to_string()}, {"c4", inv.c4.to_string()}, {"c6", inv.c6.to_string()},
              {"Delta", inv.disc.to_string()}};
    std::ostringstream text;
    for (auto& [k, v] : r.items()) text << k << " = " << v.get<std::string>() << "\n";
    bool rational = c.a1.is_constant() && c.a2.is_constant() && c.a3.is_constant() && c.a4.is_constant() &&
                    c.a6.is_constant();
    if (rational && !inv.disc.is_zero()) {
        r["j"] = to_string(j_invariant(rational_curve(c)));
        text << "j = " << r["j"].get<std::string>() << "\n";
    }
    bool id = inv.c4.pow(3) - inv.c6.pow(2) == 1728 * inv.disc;
    out.checks.push_back({"c4^3 - c6^2 = 1728 Delta", id, ""});
    out.result = r;
    out.text = text.str();
    return out;
}

Output cmd_normalize(const std::string& curve, const std::string& point) {
    Output out{"normalize"};
    out.inputs = {{"curve", curve}, {"point", point}};
    auto c = rational_curve(parse_curve(curve));
    auto p = parse_point(point);
    auto res = gamma1_normalize(c, p);
    auto normal = normal_form(res.A1, res.A3);
    json T = {{"lambda", to_string(res.T.lambda)}, {"r", to_string(res.T.r)}, {"s", to_string(res.T.s)},
              {"t", to_string(res.T.t)}};
    out.result = {{"A1", to_string(res.A1)}, {"A3", to_string(res.A3)}, {"normal_form", to_string(normal)},
                  {"transform", T}, {"note", "lambda fixed to 1; (lambda A1, lambda^3 A3) gives the other normal forms"}};
    out.checks.push_back({"transform(C, T) is the normal form", transform(c, res.T) == normal, ""});
    out.checks.push_back(
        {"T carries P to (0,0)", transform_point(res.T, p) == WPoint<Rational>::affine(0, 0), to_string(p)});
    out.text = "A1 = " + to_string(res.A1) + "\nA3 = " + to_string(res.A3) + "\nnormal form = " + to_string(normal) +
               "\nT = [" + to_string(res.T.lambda) + "," + to_string(res.T.r) + "," + to_string(res.T.s) + "," +
               to_string(res.T.t) + "]\n";
    return out;
}

Output cmd_isogeny() {
    Output out{"isogeny"};
    auto v = velu3();
    out.checks = verify_isogeny(v.cprime, v.X, v.Y);
    out.checks.push_back({"X = closed form", v.X == velu_X_closed_form(), ""});
    out.checks.push_back({"Y = closed form", v.Y == velu_Y_closed_form(), ""});
    out.result = {{"curve", to_string(v.cprime)}, {"X", v.X.to_string()}, {"Y", v.Y.to_string()}};
    out.text = "C' = " + to_string(v.cprime) + "\nX = " + v.X.to_string() + "\nY = " + v.Y.to_string() + "\n";
    return out;
}

Output cmd_maps(const std::string& map, const std::string& expr) {
    Output out{"maps"};
    out.inputs = {{"apply", map}, {"expr", expr}};
    Value v = evaluate(expr);
    if (!map.empty()) v = detail::call(map, v);
    out.result = to_string(v);
    out.text = to_string(v) + "\n";
    return out;
}

Output cmd_delta(std::optional<long> c4_pow, bool c6, std::optional<long> delta_pow, bool val2,
                 const std::string& range, const std::string& family, const std::string& expr,
                 std::optional<int> lemma) {
    Output out{"delta"};
    std::ostringstream text;
    auto emit = [&](const ValuationReport& r) {
        out.checks.push_back({r.input, r.pass, r.detail});
        json j = {{"input", r.input}, {"valuation", r.valuation}, {"leading_term", r.leading_term}, {"pass", r.pass}};
        if (!out.result.is_array()) out.result = json::array();
        out.result.push_back(j);
        text << r.input << ": valuation " << r.valuation << ", leading term " << r.leading_term
             << (r.pass ? "" : "  FAIL " + r.detail) << "\n";
    };
    if (!range.empty()) {
        auto [a, b] = parse_range(range);
        out.inputs = {{"range", range}, {"family", family}};
        for (long k = a; k <= b; ++k) {
            if (lemma) emit(lemma_binomial_check(*lemma, k));
            else if (family == "c4") emit(val2_delta_c4pow(k));
            else if (family == "c4c6") emit(val_delta_c4c6(k));
            else if (family == "Delta") emit(delta_mod2_Delta_pow(k));
            else throw UsageError("--family must be c4, c4c6 or Delta");
        }
        out.text = text.str();
        return out;
    }
    if (!expr.empty()) {
        out.inputs["expr"] = expr;
        auto v = detail::call("delta", evaluate(expr));
        out.result = to_string(v);
        out.text = to_string(v) + "\n";
        return out;
    }
    if (delta_pow) {
        out.inputs["delta_pow"] = *delta_pow;
        emit(delta_mod2_Delta_pow(*delta_pow));
        out.text = text.str();
        return out;
    }
    if (!c4_pow) throw UsageError("delta needs --c4-pow, --delta-pow, --expr or --range");
    out.inputs["c4_pow"] = *c4_pow;
    out.inputs["c6"] = c6;
    if (*c4_pow < 0) throw DomainError("--c4-pow must be >= 0");
    LevelOneForm f = LevelOneForm::c4().pow(*c4_pow);
    if (c6) f = f * LevelOneForm::c6();
    if (val2) {
        auto r = c6 ? val_delta_c4c6(*c4_pow) : val2_delta_c4pow(*c4_pow);
        out.checks.push_back({r.input, r.pass, r.detail});
        out.result = r.valuation;
        out.text = std::to_string(r.valuation) + "\n";
        return out;
    }
    auto d = delta(f);
    out.result = d.to_string();
    out.text = d.to_string() + "\n";
    return out;
}

Output cmd_qexp(const std::string& expr, long precision, std::optional<long> eisenstein) {
    Output out{"qexp"};
    out.inputs = {{"precision", precision}};
    if (precision < 1) throw DomainError("--precision must be >= 1");
    if (eisenstein) {
        out.inputs["eisenstein"] = *eisenstein;
        auto g = eisenstein_in_c4c6(*eisenstein);
        auto e = e_alpha(*eisenstein);
        bool agree = q_expansion(g, precision) == eisenstein_G(*eisenstein, precision);
        out.checks.push_back({"q-expansion of the c4, c6, Delta form equals G", agree, ""});
        out.result = {{"G", g.to_string()},
                      {"series", eisenstein_G(*eisenstein, precision).to_string()},
                      {"e_alpha", {e.gamma0.to_string(), e.level1.to_string()}}};
        out.text = "G_" + std::to_string(*eisenstein) + " = " + g.to_string() + "\n        = " +
                   eisenstein_G(*eisenstein, precision).to_string() + "\ne(alpha) = (" + e.gamma0.to_string() + ", " +
                   e.level1.to_string() + ")\n";
        return out;
    }
    if (expr.empty()) throw UsageError("qexp needs --expr or --eisenstein");
    out.inputs["expr"] = expr;
    auto s = detail::as_series(evaluate(expr, EvalOptions{precision}), precision);
    json coeffs = json::array();
    for (const auto& c : s.coefficients()) coeffs.push_back(to_string(c));
    out.result = {{"series", s.to_string()}, {"coefficients", coeffs}};
    out.text = s.to_string() + "\n";
    return out;
}

// One character per bidegree: '.' empty, a digit for the dimension, '*' for
// a Delta-divisible family that keeps growing.
std::string ascii_chart(const Chart& chart, const std::string& page) {
    const auto& w = chart.window;
    std::ostringstream out;
    for (int s = w.S; s >= 0; --s) {
        out << std::setw(3) << s << " |";
        for (long stem = -w.W; stem <= w.W; ++stem) {
            const auto* r = chart.find(s, stem + s);
            char ch = ' ';
            if (r) {
                bool growing = page == "inf" ? r->einf_growth > 0 : r->kind == LocKind::Growing;
                long dim = page == "inf" ? r->einf_dim : r->stable_dim;
                if (page == "2") dim = r->levels.back().e2_dim, growing = false;
                ch = growing ? '*' : dim == 0 ? '.' : dim > 9 ? '+' : static_cast<char>('0' + dim);
            }
            out << ch;
        }
        out << "\n";
    }
    out << "    +" << std::string(static_cast<std::size_t>(2 * w.W + 1), '-') << "\n";
    out << "     stem " << -w.W << " .. " << w.W << ", page E" << page << "\n";
    return out.str();
}

Output cmd_chart(const std::string& window, const std::string& page, bool show_ascii) {
    Output out{"chart"};
    Window w = window.empty() ? Window{} : parse_window(window);
    if (page != "2" && page != "4" && page != "7" && page != "inf") throw UsageError("--page must be 2, 4, 7 or inf");
    out.inputs = {{"window", std::to_string(w.S) + "," + std::to_string(w.W) + "," + std::to_string(w.D)},
                  {"page", page}};
    Chart chart = compute_chart(w);
    json cells = json::array();
    for (const auto& r : chart.cells) {
        long dim = page == "inf" ? r.einf_dim : page == "2" ? r.levels.back().e2_dim : r.stable_dim;
        long growth = page == "inf" ? r.einf_growth : page == "2" ? 0 : r.growth;
        if (dim == 0 && growth == 0) continue;
        json diff = json::object();
        if (page == "7" || page == "inf") diff = {{"d7_out", r.d7_out}, {"d7_in", r.d7_in}};
        json cell = {{"s", r.s},          {"t", r.t},
                     {"stem", r.stem()},  {"dim", dim},
                     {"growth", growth},  {"kind", to_string(r.kind)},
                     {"basis", r.e4_basis}, {"differentials", diff}};
        if (r.model) cell["model"] = r.model->to_string();
        cells.push_back(cell);
    }
    out.result = {{"page", page == "inf" ? "Einf" : "E" + page}, {"cells", cells}};
    out.text = show_ascii ? ascii_chart(chart, page) : "";
    return out;
}

Output cmd_verify(std::optional<int> only) {
    Output out{"verify"};
    auto table = criterion_table();
    json crit = json::array();
    std::ostringstream text;
    int failures = 0;
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (only && *only != static_cast<int>(i) + 1) continue;
        CriterionResult r = table[i]();
        if (!r.pass()) ++failures;
        std::ostringstream secs;
        secs << std::fixed << std::setprecision(2) << r.seconds;
        text << (r.pass() ? "PASS" : "FAIL") << "  criterion " << r.id << ": " << r.title << " (" << secs.str()
             << " s, limit " << r.limit_seconds << " s)\n";
        for (const auto& c : r.checks) {
            text << "      " << check_line(c) << "\n";
            out.checks.push_back({"criterion " + std::to_string(r.id) + ": " + c.name, c.pass, c.detail});
        }
        if (!r.within_time()) {
            text << "      FAIL  time limit exceeded\n";
            out.checks.push_back({"criterion " + std::to_string(r.id) + ": time limit", false, secs.str() + " s"});
        }
        crit.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass()}, {"seconds", r.seconds}});
    }
    text << "summary: " << crit.size() << " criteria, " << failures << " failure" << (failures == 1 ? "" : "s") << "\n";
    out.inputs = {{"all", !only}};
    if (only) out.inputs["criterion"] = *only;
    out.result = {{"criteria", crit}, {"failures", failures}};
    out.text = text.str();
    return out;
}

int emit(const Output& out, bool as_json) {
    if (as_json) {
        json j = {{"command", out.command}, {"inputs", out.inputs}, {"result", out.result},
                  {"checks", checks_json(out.checks)}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << out.text;
        if (out.command != "verify" && out.command != "delta")
            for (const auto& c : out.checks)
                if (!c.pass) std::cout << check_line(c) << "\n";
    }
    return out.all_pass() ? kOk : kVerify;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Computations for topological modular forms of level 3"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit {command, inputs, result, checks} as JSON");

    std::string curve, point, map, expr, range, family = "c4", window, page = "inf";
    std::optional<long> c4_pow, delta_pow, eisenstein;
    std::optional<int> lemma, criterion;
    long precision = 20;
    bool c6 = false, val2 = false, all = false, ascii = true;

    auto* inv = app.add_subcommand("invariants", "b2..b8, c4, c6, Delta and j of a Weierstrass curve");
    inv->add_option("--curve,--expr", curve, "[a1,a2,a3,a4,a6]")->required();

    auto* norm = app.add_subcommand("normalize", "move an order-3 point to (0,0) with flat tangent");
    norm->add_option("--curve", curve, "[a1,a2,a3,a4,a6] over Q")->required();
    norm->add_option("--point", point, "[x,y]")->required();

    auto* iso = app.add_subcommand("isogeny", "the 3-isogeny of the universal curve and its checks");

    auto* maps = app.add_subcommand("maps", "apply fstar, qstar, hstar, tstar or delta to an expression");
    maps->add_option("--apply", map, "map to apply (omit to just evaluate)")
        ->check(CLI::IsMember({"fstar", "qstar", "hstar", "tstar", "delta"}));
    maps->add_option("--expr", expr, "expression")->required();

    auto* del = app.add_subcommand("delta", "delta = q* - f* and its 2-adic valuations");
    del->add_option("--c4-pow", c4_pow, "k in delta(c4^k)");
    del->add_flag("--c6", c6, "use c4^k c6");
    del->add_option("--delta-pow", delta_pow, "N in delta(Delta^N) mod 2");
    del->add_flag("--val2", val2, "print the 2-adic content valuation only");
    del->add_option("--range", range, "A..B: sweep the family");
    del->add_option("--family", family, "c4, c4c6 or Delta for --range");
    del->add_option("--lemma", lemma, "d: sweep the binomial lemma over --range");
    del->add_option("--expr", expr, "level-one form");

    auto* qx = app.add_subcommand("qexp", "q-expansions and Eisenstein series");
    qx->add_option("--expr", expr, "expression in c4, c6, Delta, q");
    qx->add_option("--precision", precision, "series known through q^N");
    qx->add_option("--eisenstein", eisenstein, "weight 2n: G_{2n} in c4, c6, Delta and e(alpha)");

    auto* ch = app.add_subcommand("chart", "spectral sequence chart");
    ch->add_option("--window", window, "S,W,D: lines, stem bound, Delta budget");
    ch->add_option("--page", page, "2, 4, 7 or inf");
    ch->add_flag("!--no-ascii", ascii, "omit the ASCII chart in text mode");

    auto* ver = app.add_subcommand("verify", "acceptance checks");
    ver->add_flag("--all", all, "run every criterion");
    ver->add_option("--criterion", criterion, "run one criterion (1-9)")->check(CLI::Range(1, 9));

    for (auto* sub : {inv, norm, iso, maps, del, qx, ch, ver}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        Output out;
        if (*inv) out = cmd_invariants(curve);
        else if (*norm) out = cmd_normalize(curve, point);
        else if (*iso) out = cmd_isogeny();
        else if (*maps) out = cmd_maps(map, expr);
        else if (*del) out = cmd_delta(c4_pow, c6, delta_pow, val2, range, family, expr, lemma);
        else if (*qx) out = cmd_qexp(expr, precision, eisenstein);
        else if (*ch) out = cmd_chart(window, page, ascii);
        else {
            if (!all && !criterion) throw UsageError("verify needs --all or --criterion N");
            out = cmd_verify(criterion);
        }
        return emit(out, as_json);
    } catch (const ParseError& e) {
        std::cerr << "tmf3: " << e.what() << "\n";
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << "tmf3: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "tmf3: " << e.what() << "\n";
        return kDomain;
    }
}
