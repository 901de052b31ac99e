// Acceptance suite: one line per criterion, exact equality throughout,
// each criterion also held to its wall-clock limit.

#include "ehrhart/cli.hpp"
#include "ehrhart/constructions.hpp"
#include "ehrhart/counting.hpp"
#include "ehrhart/errors.hpp"

#include <json.hpp>

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

using namespace ehrhart;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

Rational q(long num, long den = 1) { return make_rational(num, den); }

Simplex unit_simplex(std::size_t d) {
    std::vector<LatticePoint> vs(d + 1, LatticePoint(d, 0));
    for (std::size_t i = 0; i < d; ++i) vs[i + 1][i] = 1;
    return Simplex(vs);
}

std::vector<LatticePolytope> base_corpus() {
    return {unit_simplex(1), unit_simplex(2), unit_simplex(3), reeve(1), reeve(5), reeve(13)};
}

nlohmann::json run_cli_json(const std::vector<std::string>& args, int& code) {
    std::ostringstream out, err;
    code = cli::run(args, out, err);
    if (code != cli::Success && out.str().empty()) return {};
    return nlohmann::json::parse(out.str());
}

Outcome apex13() {
    Outcome o;
    const LatticePolytope tet = Simplex({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 13}});
    std::vector<Sample> samples;
    for (long n = 0; n <= 5; ++n) samples.push_back({n, count_lattice_points(tet, n)});
    const Polynomial p = interpolate(samples);
    o.require(p == Polynomial({q(1), q(-1, 6), q(1), q(13, 6)}), "interpolant is " + p.to_string());
    o.require(p.to_string() == "13/6*n^3 + n^2 - 1/6*n + 1", "string form " + p.to_string());
    return o;
}

Outcome reeve_family() {
    Outcome o;
    for (long m = 1; m <= 20; ++m) {
        const Polynomial expected({q(1), q(12 - m, 6), q(1), q(m, 6)});
        const Polynomial got = ehrhart_polynomial(reeve(m));
        o.require(got == expected, "m = " + std::to_string(m) + ": " + got.to_string());
    }
    return o;
}

Outcome prism_factor() {
    Outcome o;
    for (const auto& p : base_corpus()) {
        const Polynomial base = ehrhart_polynomial(p);
        for (long k = 1; k <= 3; ++k) {
            const Polynomial got = ehrhart_polynomial(prism(p, k));
            o.require(got == Polynomial::linear(k, 1) * base, "k = " + std::to_string(k) + ": " + got.to_string());
        }
    }
    return o;
}

Outcome witness(int d, long m) {
    Outcome o;
    int code = -1;
    auto j = run_cli_json({"--json", "verify", "--d", std::to_string(d), "--m", std::to_string(m)}, code);
    o.require(code == cli::Success, "verify exit code " + std::to_string(code));
    o.require(!j.is_null() && j["verdicts"]["brute_force_equals_closed_form"] == "pass", "verify verdict");
    const auto rep = coefficient_report(d, m);
    for (int i = 1; i <= d - 2; ++i)
        o.require(rep.coefficients[static_cast<std::size_t>(i)] < 0, "c_" + std::to_string(i) + " not negative");
    if (d == 4) {
        o.require(rep.coefficients[1] == q(-1, 6), "c_1 = " + rep.coefficients[1].get_str());
        o.require(rep.coefficients[2] == q(-1, 6), "c_2 = " + rep.coefficients[2].get_str());
    }
    return o;
}

Outcome witness5() {
    Outcome o = witness(5, 37);
    // factorized counting keeps every dilate inside the default budget
    const LatticePolytope p = negative_coefficient_polytope(5, 37);
    o.require(candidate_points(p, 7, true) <= *CountOptions{}.max_points, "factorized cost over default budget");
    return o;
}

Outcome g_positivity() {
    Outcome o;
    for (int d = 5; d <= 60; ++d)
        for (int j = 3; j <= d - 2; ++j)
            o.require(g_value(d, j) > 0, "g(" + std::to_string(d) + "," + std::to_string(j) + ") <= 0");
    for (int d = 7; d <= 30; ++d)
        for (int j = 4; j <= d - 3; ++j)
            o.require(g_value(d, j) == g_value(d - 1, j) + g_value(d - 1, j - 1) + (2 * d - 7) * binomial(d - 3, j - 1),
                      "recurrence at (" + std::to_string(d) + "," + std::to_string(j) + ")");
    return o;
}

Outcome coefficient_formulas() {
    Outcome o;
    for (int d = 4; d <= 8; ++d)
        for (long m : {1, 13, 100}) {
            const std::string at = " at d = " + std::to_string(d) + ", m = " + std::to_string(m);
            // coefficient_report throws InvariantViolation if the formulas and the expansion differ
            const auto rep = coefficient_report(d, m);
            o.require(rep.coefficients == closed_form_ehrhart(d, m).coefficients(), "expansion mismatch" + at);
            o.require(rep.coefficients[0] == 1, "c_0" + at);
            o.require(rep.coefficients[static_cast<std::size_t>(d)] > 0, "c_d" + at);
            o.require(rep.coefficients[static_cast<std::size_t>(d - 1)] > 0, "c_{d-1}" + at);
        }
    return o;
}

Outcome thresholds() {
    Outcome o;
    const long expected[] = {19, 37, 67};
    for (int d = 4; d <= 6; ++d) {
        const BigInt m = min_negative_m(d);
        o.require(m == expected[d - 4], "min_negative_m(" + std::to_string(d) + ") = " + m.get_str());
        const auto below = coefficient_report(d, m - 1);
        bool some_nonneg = false;
        for (int j = 1; j <= d - 2; ++j) some_nonneg = some_nonneg || below.coefficients[static_cast<std::size_t>(j)] >= 0;
        o.require(some_nonneg, "no non-negative middle coefficient at m - 1");
    }
    return o;
}

Outcome delta_vectors() {
    Outcome o;
    for (long m = 1; m <= 20; ++m) {
        const DeltaVector dv = delta_vector(ehrhart_polynomial(reeve(m)), 3);
        o.require(dv.entries == std::vector<BigInt>{1, 0, m - 1, 0}, "reeve(" + std::to_string(m) + ")");
    }
    std::vector<LatticePolytope> corpus = base_corpus();
    for (const auto& p : base_corpus())
        for (long k = 1; k <= 3; ++k) corpus.push_back(prism(p, k));
    corpus.push_back(Box({{0, 1}, {0, 1}}));
    corpus.push_back(negative_coefficient_polytope(4, 19));
    corpus.push_back(negative_coefficient_polytope(5, 37));
    for (const auto& p : corpus) {
        const int d = static_cast<int>(dimension(p));
        const Polynomial e = ehrhart_polynomial(p);
        const DeltaVector dv = delta_vector(e, d);
        o.require(dv.entries.at(0) == 1, "delta_0 != 1");
        BigInt sum = 0;
        for (const auto& x : dv.entries) {
            o.require(x >= 0, "negative delta entry");
            sum += x;
        }
        BigInt fact = 1;
        for (int i = 2; i <= d; ++i) fact *= i;
        o.require(Rational(sum) == Rational(fact) * e.leading_coefficient(), "sum of delta != d! * leading coefficient");
    }
    return o;
}

Outcome first_positive_root() {
    Outcome o;
    o.require(min_positive_root_m() == 35, "min_positive_root_m != 35");
    const auto ivs = isolate_positive_real_roots(reeve_ehrhart(35));
    o.require(count_positive_real_roots(reeve_ehrhart(35)) == 2, "root count for m = 35");
    o.require(ivs.size() == 2, "interval count for m = 35");
    if (ivs.size() == 2) {
        o.require(ivs[0].lo < q(2, 5) && q(2, 5) <= ivs[0].hi, "2/5 not isolated");
        o.require(ivs[1].lo < q(3, 7) && q(3, 7) <= ivs[1].hi, "3/7 not isolated");
    }
    o.require(count_positive_real_roots(reeve_ehrhart(34)) == 0, "root count for m = 34");
    return o;
}

Outcome counting_engine() {
    Outcome o;
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> coord(-2, 2), len(1, 2), kind(0, 1);
    auto random_simplex = [&](std::size_t d) {
        while (true) {
            std::vector<LatticePoint> vs(d + 1, LatticePoint(d));
            for (auto& v : vs)
                for (auto& x : v) x = coord(rng);
            try {
                return Simplex(vs);
            } catch (const InvalidPolytope&) {
            }
        }
    };
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<LatticePolytope> fs;
        for (int i = len(rng) + 1; i > 0; --i) {
            if (kind(rng)) {
                fs.push_back(random_simplex(static_cast<std::size_t>(len(rng))));
            } else {
                int a = coord(rng);
                fs.push_back(Box({{a, a + len(rng)}}));
            }
        }
        const LatticePolytope p = Product(fs);
        for (long n = 1; n <= 3; ++n) {
            if (candidate_points(p, n, false) > 100000) continue;
            const BigInt flat = count_lattice_points_flat(p, n);
            o.require(count_lattice_points(p, n) == flat, "factorized != flat");
            for (unsigned threads : {1u, 2u, 4u})
                for (std::size_t slabs : {std::size_t{1}, std::size_t{2}, std::size_t{7}, std::size_t{0}}) {
                    CountOptions opts;
                    opts.threads = threads;
                    opts.slabs = slabs;
                    o.require(count_lattice_points_flat(p, n, opts) == flat, "flat count depends on partitioning");
                    o.require(count_lattice_points(p, n, opts) == flat, "factorized count depends on partitioning");
                }
        }
    }
    return o;
}

struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> check;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "tetrahedron with apex (1,1,13) interpolates to 13/6 n^3 + n^2 - 1/6 n + 1", 1, apex13},
        {2, "Reeve family formula for m = 1..20", 10, reeve_family},
        {3, "prism by [0,k] multiplies by (kn+1)", 30, prism_factor},
        {4, "d = 4 witness: verify --d 4 --m 19, c_1 = c_2 = -1/6", 30, [] { return witness(4, 19); }},
        {5, "d = 5 witness: verify --d 5 --m 37, c_1..c_3 < 0", 300, witness5},
        {6, "g(d,j) > 0 for 5 <= d <= 60 and its recurrence on 7 <= d <= 30", 1, g_positivity},
        {7, "coefficient formulas agree with the expansion for d = 4..8", 1, coefficient_formulas},
        {8, "negativity thresholds 19, 37, 67 with minimality witnesses", 1, thresholds},
        {9, "delta-vectors (1, 0, m-1, 0) and corpus nonnegativity", 10, delta_vectors},
        {10, "first positive real root at m = 35; roots 2/5, 3/7; none at m = 34", 1, first_positive_root},
        {11, "factorized = flat counts, independent of threads and slabs", 30, counting_engine},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (o.pass && secs >= c.limit_seconds) {
            o.pass = false;
            std::ostringstream os;
            os << "took " << secs << "s, limit " << c.limit_seconds << "s";
            o.detail = os.str();
        }
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << std::setw(2) << c.id << "] " << c.name << "  (" << std::fixed
                  << std::setprecision(3) << secs << "s)";
        if (!o.pass) std::cout << "  -- " << o.detail;
        std::cout << '\n';
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
