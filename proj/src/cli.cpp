#include "ehrhart/cli.hpp"

#include "ehrhart/constructions.hpp"
#include "ehrhart/counting.hpp"
#include "ehrhart/errors.hpp"
#include "ehrhart/spec_io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

namespace ehrhart::cli {

namespace {

using nlohmann::ordered_json;

struct Settings {
    bool json = false;
    std::string out_path;
    unsigned threads = 0;
    std::string max_points = "100000000";
    bool no_budget = false;
    bool approx = false;
};

// Everything a command produces. `doc` is the machine-readable RunReport and
// must stay byte-identical across runs, so timing only goes to the text form.
struct Report {
    ordered_json doc;
    std::vector<std::string> lines;
    std::vector<std::pair<std::string, double>> timing;

    Report(const std::string& command, ordered_json inputs) {
        doc["command"] = command;
        doc["inputs"] = std::move(inputs);
        doc["outputs"] = ordered_json::object();
        doc["verdicts"] = ordered_json::object();
    }

    void line(std::string s) { lines.push_back(std::move(s)); }
    void verdict(const std::string& name, bool pass) { doc["verdicts"][name] = pass ? "pass" : "fail"; }

    template <class F>
    auto timed(const std::string& phase, F&& f) {
        auto start = std::chrono::steady_clock::now();
        auto result = f();
        timing.emplace_back(phase, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        return result;
    }
};

CountOptions count_options(const Settings& s) {
    CountOptions opts;
    opts.threads = s.threads;
    if (s.no_budget) {
        opts.max_points.reset();
    } else {
        BigInt limit;
        if (limit.set_str(s.max_points, 10) != 0 || limit < 0) throw InputError("--max-points must be a non-negative integer");
        opts.max_points = limit;
    }
    return opts;
}

ordered_json poly_json(const Polynomial& p) {
    ordered_json j;
    j["text"] = p.to_string();
    j["coefficients"] = to_json(p);
    return j;
}

ordered_json int_list(const std::vector<BigInt>& v) {
    ordered_json a = ordered_json::array();
    for (const auto& z : v) a.push_back(to_json(z));
    return a;
}

std::string tuple_text(const std::vector<BigInt>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
    return s + ")";
}

std::string approx_text(const Rational& x) {
    std::ostringstream os;
    os << std::setprecision(10) << x.get_d();
    return os.str();
}

void add_roots(Report& rep, const Polynomial& p, const Settings& s) {
    const auto intervals = isolate_positive_real_roots(p);
    ordered_json list = ordered_json::array();
    rep.line("positive real roots: " + std::to_string(intervals.size()));
    for (const auto& iv : intervals) {
        ordered_json item;
        item["lo"] = iv.lo.get_str();
        item["hi"] = iv.hi.get_str();
        std::string text = "  root in (" + iv.lo.get_str() + ", " + iv.hi.get_str() + "]";
        if (s.approx) {
            const RootInterval fine = refine_root(p, iv, make_rational(1, 1000000000000));
            const std::string approx = approx_text((fine.lo + fine.hi) / 2);
            item["approx_decimal"] = approx;
            text += "  [approx, decimal: " + approx + "]";
        }
        list.push_back(item);
        rep.line(text);
    }
    rep.doc["outputs"]["positive_real_roots"] = intervals.size();
    rep.doc["outputs"]["root_intervals"] = list;
}

std::string summary(const LatticePolytope& p) {
    if (const auto* s = p.get_if<Simplex>()) return "simplex with " + std::to_string(s->vertices().size()) + " vertices";
    if (const auto* b = p.get_if<Box>()) return "box with " + std::to_string(b->intervals().size()) + " intervals";
    if (const auto* h = p.get_if<HRep>()) return "hrep with " + std::to_string(h->inequalities().size()) + " inequalities";
    std::string s = "product of";
    for (const auto& f : std::get<Product>(p.variant()).factors()) s += " [" + summary(f) + "]";
    return s;
}

LatticePolytope read_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read spec file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str());
}

int cmd_construct(Report& rep, const std::string& family, long m, std::optional<int> d, const std::string& spec_out) {
    LatticePolytope p = [&] {
        if (family == "reeve") return reeve(m);
        if (!d) throw InputError("--family tower needs --d");
        return negative_coefficient_polytope(*d, m);
    }();
    const std::string text = serialize_spec(p);
    rep.doc["inputs"]["spec_hash"] = spec_hash(p);
    rep.doc["outputs"]["dimension"] = dimension(p);
    rep.doc["outputs"]["summary"] = summary(p);
    rep.doc["outputs"]["spec"] = spec_to_json(p);
    rep.line("dimension: " + std::to_string(dimension(p)));
    rep.line("polytope: " + summary(p));
    rep.line("spec hash: " + spec_hash(p));
    if (!spec_out.empty()) {
        std::ofstream f(spec_out);
        if (!f) throw InputError("cannot write " + spec_out);
        f << text << '\n';
        rep.doc["outputs"]["written_to"] = spec_out;
        rep.line("written: " + spec_out);
    } else {
        rep.line(text);
    }
    return Success;
}

int cmd_ehrhart(Report& rep, const Settings& s, const std::string& path) {
    const LatticePolytope p = read_spec_file(path);
    const CountOptions opts = count_options(s);
    rep.doc["inputs"]["spec_hash"] = spec_hash(p);
    const std::size_t d = dimension(p);
    rep.doc["outputs"]["dimension"] = d;
    rep.line("polytope: " + summary(p) + ", dimension " + std::to_string(d) + ", spec hash " + spec_hash(p));

    const Polynomial poly = rep.timed("count+interpolate", [&] { return ehrhart_polynomial(p, opts); });
    rep.verdict("guard_counts_match", true);
    rep.doc["outputs"]["polynomial"] = poly_json(poly);
    rep.line("i(P, n) = " + poly.to_string());

    const DeltaVector delta = delta_vector(poly, static_cast<int>(d));
    rep.doc["outputs"]["delta_vector"] = int_list(delta.entries);
    rep.line("delta = " + tuple_text(delta.entries));

    add_roots(rep, poly, s);
    return Success;
}

int cmd_closed_form(Report& rep, int d, long m) {
    const Polynomial poly = closed_form_ehrhart(d, m);
    rep.doc["outputs"]["polynomial"] = poly_json(poly);
    rep.line("i(P, n) = " + poly.to_string());
    return Success;
}

int cmd_verify(Report& rep, const Settings& s, int d, long m) {
    const LatticePolytope p = negative_coefficient_polytope(d, m);
    const CountOptions opts = count_options(s);
    rep.doc["inputs"]["spec_hash"] = spec_hash(p);

    const Polynomial closed = closed_form_ehrhart(d, m);
    const Polynomial brute = rep.timed("count+interpolate", [&] { return ehrhart_polynomial(p, opts); });
    const bool equal = brute == closed;
    const CoefficientReport coeffs = coefficient_report(d, m);

    rep.doc["outputs"]["brute_force"] = poly_json(brute);
    rep.doc["outputs"]["closed_form"] = poly_json(closed);
    rep.doc["outputs"]["all_middle_negative"] = coeffs.all_middle_negative;
    rep.verdict("brute_force_equals_closed_form", equal);
    rep.line("brute force: " + brute.to_string());
    rep.line("closed form: " + closed.to_string());
    rep.line(std::string("coefficients of n..n^(d-2) all negative: ") + (coeffs.all_middle_negative ? "yes" : "no"));
    rep.line(equal ? "PASS" : "FAIL");
    return equal ? Success : VerificationFailed;
}

void coefficient_rows(Report& rep, const CoefficientReport& c, const std::string& key) {
    ordered_json rows = ordered_json::array();
    for (std::size_t j = 0; j < c.coefficients.size(); ++j) {
        ordered_json row;
        row["degree"] = j;
        row["value"] = c.coefficients[j].get_str();
        row["sign"] = sign_label(c.signs[j]);
        rows.push_back(row);
    }
    rep.doc["outputs"][key] = rows;
}

int cmd_signs(Report& rep, int d, long m) {
    const CoefficientReport c = coefficient_report(d, m);
    coefficient_rows(rep, c, "coefficients");
    rep.doc["outputs"]["a_table"] = int_list(c.a_table);
    ordered_json g = ordered_json::array();
    for (const auto& e : c.g_table) g.push_back(ordered_json{{"j", e.j}, {"g", to_json(e.value)}});
    rep.doc["outputs"]["g_table"] = g;
    rep.doc["outputs"]["all_middle_negative"] = c.all_middle_negative;
    rep.verdict("formulas_match_expansion", true);

    for (std::size_t j = 0; j < c.coefficients.size(); ++j)
        rep.line("n^" + std::to_string(j) + ": " + c.coefficients[j].get_str() + " " + sign_label(c.signs[j]));
    rep.line("A = " + tuple_text(c.a_table));
    for (const auto& e : c.g_table) rep.line("g(" + std::to_string(d) + "," + std::to_string(e.j) + ") = " + e.value.get_str());
    rep.line(std::string("all middle coefficients negative: ") + (c.all_middle_negative ? "yes" : "no"));
    return Success;
}

int cmd_find_min_m(Report& rep, int d) {
    const auto thresholds = middle_coefficient_thresholds(d);
    const BigInt m = min_negative_m(d);
    ordered_json per = ordered_json::array();
    for (const auto& t : thresholds) {
        per.push_back(ordered_json{{"j", t.j},
                                   {"slope", t.slope.get_str()},
                                   {"intercept", t.intercept.get_str()},
                                   {"threshold", to_json(t.threshold)}});
        rep.line("c_" + std::to_string(t.j) + " = " + t.slope.get_str() + "*m + " + t.intercept.get_str() +
                 "  negative from m = " + t.threshold.get_str());
    }
    rep.doc["outputs"]["min_m"] = to_json(m);
    rep.doc["outputs"]["thresholds"] = per;
    rep.line("min_negative_m(" + std::to_string(d) + ") = " + m.get_str());

    const auto at = coefficient_report(d, m);
    coefficient_rows(rep, at, "witness");
    std::string row = "at m = " + m.get_str() + ":";
    for (std::size_t j = 1; j + 2 < at.coefficients.size(); ++j) row += " c_" + std::to_string(j) + "=" + at.coefficients[j].get_str();
    rep.line(row);
    if (m > 1) {
        const auto below = coefficient_report(d, m - 1);
        coefficient_rows(rep, below, "counter_witness");
        row = "at m = " + BigInt(m - 1).get_str() + ":";
        for (std::size_t j = 1; j + 2 < below.coefficients.size(); ++j)
            row += " c_" + std::to_string(j) + "=" + below.coefficients[j].get_str();
        rep.line(row);
    }
    rep.verdict("minimal", true);
    return Success;
}

int cmd_gcheck(Report& rep, int d_max) {
    if (d_max < 5) throw InputError("--d-max must be at least 5");
    std::size_t checked = 0;
    ordered_json failures = ordered_json::array();
    for (int d = 5; d <= d_max; ++d)
        for (int j = 3; j <= d - 2; ++j) {
            ++checked;
            BigInt g = g_value(d, j);
            if (g <= 0) {
                failures.push_back(ordered_json{{"d", d}, {"j", j}, {"g", to_json(g)}});
                rep.line("g(" + std::to_string(d) + "," + std::to_string(j) + ") = " + g.get_str() + " is not positive");
            }
        }
    rep.doc["outputs"]["checked"] = checked;
    rep.doc["outputs"]["failures"] = failures;
    const bool pass = failures.empty();
    rep.verdict("g_positive", pass);
    rep.line("checked " + std::to_string(checked) + " pairs (d, j): " + (pass ? "PASS" : "FAIL"));
    return pass ? Success : VerificationFailed;
}

int cmd_roots(Report& rep, const Settings& s, const std::string& spec_path, std::optional<long> m, std::optional<int> d) {
    Polynomial poly;
    if (!spec_path.empty()) {
        const LatticePolytope p = read_spec_file(spec_path);
        rep.doc["inputs"]["spec_hash"] = spec_hash(p);
        poly = rep.timed("count+interpolate", [&] { return ehrhart_polynomial(p, count_options(s)); });
    } else if (m) {
        if (*m < 1) throw InputError("--m must be positive");
        poly = d ? closed_form_ehrhart(*d, *m) : reeve_ehrhart(*m);
    } else {
        throw InputError("roots needs a spec file or --m");
    }
    rep.doc["outputs"]["polynomial"] = poly_json(poly);
    rep.line("i(P, n) = " + poly.to_string());
    add_roots(rep, poly, s);
    return Success;
}

void emit(const Report& rep, const Settings& s, std::ostream& out) {
    std::ostringstream text;
    if (s.json) {
        text << rep.doc.dump(2) << '\n';
    } else {
        for (const auto& l : rep.lines) text << l << '\n';
        for (const auto& [phase, secs] : rep.timing)
            text << "time " << phase << ": " << std::fixed << std::setprecision(3) << secs << "s\n";
    }
    if (!s.out_path.empty() && rep.doc["command"] != "construct") {
        std::ofstream f(s.out_path);
        if (!f) throw InputError("cannot write " + s.out_path);
        f << text.str();
    } else {
        out << text.str();
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Ehrhart polynomials of lattice polytopes: exact counting, closed forms and coefficient signs"};
    app.require_subcommand(1);
    app.fallthrough();

    Settings s;
    app.add_flag("--json", s.json, "Print the machine-readable run report");
    app.add_option("--out", s.out_path, "Write the report here (construct: the spec file)");
    app.add_option("--threads", s.threads, "Counting threads (0 = all cores)");
    app.add_option("--max-points", s.max_points, "Candidate-point budget per dilate");
    app.add_flag("--no-budget", s.no_budget, "Disable the candidate-point budget");
    app.add_flag("--approx", s.approx, "Add labeled decimal approximations of roots");

    std::string family;
    long m = 0;
    int d = 0;
    int d_max = 0;
    std::string spec_path;

    auto* construct = app.add_subcommand("construct", "Write a PolytopeSpec for a named family");
    construct->add_option("--family", family, "reeve | tower")->required()->check(CLI::IsMember({"reeve", "tower"}));
    construct->add_option("--m", m, "Reeve parameter")->required();
    auto* construct_d = construct->add_option("--d", d, "Dimension (tower family)");

    auto* ehrhart = app.add_subcommand("ehrhart", "Ehrhart polynomial of a spec file by lattice counting");
    ehrhart->add_option("spec", spec_path, "PolytopeSpec file")->required();

    auto* closed = app.add_subcommand("closed-form", "Expanded closed-form Ehrhart polynomial of the tower family");
    closed->add_option("--d", d)->required();
    closed->add_option("--m", m)->required();

    auto* verify = app.add_subcommand("verify", "Brute-force count vs closed form for the tower family");
    verify->add_option("--d", d)->required();
    verify->add_option("--m", m)->required();

    auto* signs = app.add_subcommand("signs", "Coefficient table with signs, A_i and g(d,j)");
    signs->add_option("--d", d)->required();
    signs->add_option("--m", m)->required();

    auto* find_min = app.add_subcommand("find-min-m", "Least m making every middle coefficient negative");
    find_min->add_option("--d", d)->required();

    auto* gcheck = app.add_subcommand("gcheck", "Check g(d,j) > 0 for 5 <= d <= d_max");
    gcheck->add_option("--d-max", d_max)->required();

    auto* roots = app.add_subcommand("roots", "Positive real roots of an Ehrhart polynomial");
    roots->add_option("spec", spec_path, "PolytopeSpec file");
    auto* roots_m = roots->add_option("--m", m, "Reeve parameter (closed form, no counting)");
    auto* roots_d = roots->add_option("--d", d, "Tower dimension; omit for the tetrahedron");

    std::vector<std::string> argv_store{"ehrhart"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return InvalidInput;
    }

    auto inputs = [&](std::initializer_list<std::pair<const char*, ordered_json>> kv) {
        ordered_json j = ordered_json::object();
        for (const auto& [k, v] : kv) j[k] = v;
        return j;
    };

    try {
        std::unique_ptr<Report> rep;
        int code = Success;
        if (*construct) {
            std::optional<int> dd = construct_d->count() ? std::optional<int>(d) : std::nullopt;
            rep = std::make_unique<Report>("construct", inputs({{"family", family}, {"m", m}}));
            if (dd) rep->doc["inputs"]["d"] = *dd;
            code = cmd_construct(*rep, family, m, dd, s.out_path);
        } else if (*ehrhart) {
            rep = std::make_unique<Report>("ehrhart", inputs({{"spec", spec_path}}));
            code = cmd_ehrhart(*rep, s, spec_path);
        } else if (*closed) {
            rep = std::make_unique<Report>("closed-form", inputs({{"d", d}, {"m", m}}));
            code = cmd_closed_form(*rep, d, m);
        } else if (*verify) {
            rep = std::make_unique<Report>("verify", inputs({{"d", d}, {"m", m}}));
            code = cmd_verify(*rep, s, d, m);
        } else if (*signs) {
            rep = std::make_unique<Report>("signs", inputs({{"d", d}, {"m", m}}));
            code = cmd_signs(*rep, d, m);
        } else if (*find_min) {
            rep = std::make_unique<Report>("find-min-m", inputs({{"d", d}}));
            code = cmd_find_min_m(*rep, d);
        } else if (*gcheck) {
            rep = std::make_unique<Report>("gcheck", inputs({{"d_max", d_max}}));
            code = cmd_gcheck(*rep, d_max);
        } else if (*roots) {
            std::optional<long> mm = roots_m->count() ? std::optional<long>(m) : std::nullopt;
            std::optional<int> dd = roots_d->count() ? std::optional<int>(d) : std::nullopt;
            rep = std::make_unique<Report>("roots", inputs({}));
            if (!spec_path.empty()) rep->doc["inputs"]["spec"] = spec_path;
            if (mm) rep->doc["inputs"]["m"] = *mm;
            if (dd) rep->doc["inputs"]["d"] = *dd;
            code = cmd_roots(*rep, s, spec_path, mm, dd);
        }
        emit(*rep, s, out);
        return code;
    } catch (const BudgetExceeded& e) {
        err << "budget refused: " << e.what() << " (raise --max-points or pass --no-budget)\n";
        return BudgetRefused;
    } catch (const InputError& e) {
        err << "invalid input: " << e.what() << '\n';
        return InvalidInput;
    } catch (const Error& e) {
        err << "verification failed: " << e.what() << '\n';
        return VerificationFailed;
    }
}

}  // namespace ehrhart::cli
