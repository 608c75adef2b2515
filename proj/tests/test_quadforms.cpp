#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "unram/quadforms.hpp"

using namespace unram;

namespace {

// multiset fingerprint of a form's coefficients
std::vector<std::string> coeff_multiset(const DiagonalForm& f) {
    std::vector<std::string> out;
    for (const SignedMonomial& c : f.coeffs) out.push_back(c.to_string());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("pfister coefficients on the named examples", "[quadforms]") {
    // <<a>> = <1, -a> with a = t1
    DiagonalForm one = pfister_coefficients({{1}}, 1);
    REQUIRE(one.coeffs.size() == 2);
    REQUIRE(one.coeffs[0] == SignedMonomial{1, {0}});
    REQUIRE(one.coeffs[1] == SignedMonomial{-1, {1}});

    // <<a, b>> = <1, -a, -b, ab>
    DiagonalForm two = pfister_coefficients({{1, 0}, {0, 1}}, 2);
    REQUIRE(two.coeffs.size() == 4);
    REQUIRE(two.coeffs[0] == SignedMonomial{1, {0, 0}});
    REQUIRE(two.coeffs[1] == SignedMonomial{-1, {1, 0}});
    REQUIRE(two.coeffs[2] == SignedMonomial{-1, {0, 1}});
    REQUIRE(two.coeffs[3] == SignedMonomial{1, {1, 1}});

    // empty tensor product
    DiagonalForm empty = pfister_coefficients(std::vector<std::vector<std::int64_t>>{}, 1);
    REQUIRE(empty.coeffs.size() == 1);
    REQUIRE(empty.coeffs[0] == SignedMonomial{1, {0}});
}

TEST_CASE("pfister coefficient count and permutation invariance", "[quadforms][property]") {
    std::mt19937 rng(2468);
    std::uniform_int_distribution<std::int64_t> exp(0, 3);
    for (int iter = 0; iter < 20; ++iter) {
        std::vector<std::vector<std::int64_t>> entries(3, std::vector<std::int64_t>(3));
        for (auto& e : entries)
            for (auto& x : e) x = exp(rng);
        DiagonalForm base = pfister_coefficients(entries, 3);
        REQUIRE(base.coeffs.size() == 8);

        std::vector<std::vector<std::int64_t>> perm = {entries[2], entries[0], entries[1]};
        REQUIRE(coeff_multiset(pfister_coefficients(perm, 3)) == coeff_multiset(base));
    }
}

TEST_CASE("small Pfister quadric shapes", "[quadforms]") {
    // (a1, a2): conic x0^2 - a1 x1^2 - a2 x2^2
    MonomialSymbol s2 = MonomialSymbol::from_rows({{1, 0}, {0, 1}}, 2, 2);
    QuadricEquation conic = small_pfister_quadric(s2);
    REQUIRE(conic.variables == 3);
    REQUIRE(conic.projective_dim == 1);
    REQUIRE(conic.polynomial_string("a", 1) == "x0^2 - a1*x1^2 - a2*x2^2");

    MonomialSymbol s3 = MonomialSymbol::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 3, 2);
    QuadricEquation q3 = small_pfister_quadric(s3);
    REQUIRE(q3.variables == 5);
    REQUIRE(q3.projective_dim == 3);

    for (std::uint32_t n = 1; n <= 6; ++n) {
        MonomialSymbol s(n, 1, 2);
        for (std::uint32_t i = 0; i < n; ++i) s.exponents[i][0] = i + 1;
        REQUIRE(small_pfister_quadric(s).variables == (1u << (n - 1)) + 1);
    }
}

TEST_CASE("swapping leading slots leaves the quadric coefficients as a multiset", "[quadforms]") {
    // same mod-2 class, swap confined to the first n-1 slots
    MonomialSymbol s = MonomialSymbol::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 3, 2);
    MonomialSymbol swapped = MonomialSymbol::from_rows({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}, 3, 2);
    REQUIRE(normalize(s).canonical() == normalize(swapped).canonical());  // ell = 2
    QuadricEquation a = small_pfister_quadric(s);
    QuadricEquation b = small_pfister_quadric(swapped);
    REQUIRE(coeff_multiset(a.form) == coeff_multiset(b.form));
}

TEST_CASE("specialization on the named examples", "[quadforms]") {
    DiagonalForm f = pfister_coefficients({{1}}, 1);  // <1, -t1>
    REQUIRE(specialize(f, {2}, 7) == std::vector<std::uint32_t>{1, 5});

    DiagonalForm g = pfister_coefficients({{1, 0}, {0, 1}}, 2);  // <1,-t1,-t2,t1t2>
    REQUIRE(specialize(g, {2, 3}, 7) == std::vector<std::uint32_t>{1, 5, 4, 6});

    DiagonalForm empty;
    REQUIRE(specialize(empty, {}, 5).empty());

    REQUIRE_THROWS_AS(specialize(f, {0}, 7), input_error);
    REQUIRE_THROWS_AS(specialize(f, {2}, 6), input_error);
}

TEST_CASE("isotropy search on the named examples", "[quadforms]") {
    auto w1 = isotropy_bruteforce({1, 4}, 5);  // <1, -1> over F_5
    REQUIRE(w1.has_value());
    REQUIRE(*w1 == std::vector<std::uint32_t>{1, 1});

    auto w2 = isotropy_bruteforce({1, 1, 1}, 7);
    REQUIRE(w2.has_value());
    REQUIRE(*w2 == std::vector<std::uint32_t>{1, 2, 3});

    // <1, -c> with c a non-square stays anisotropic
    for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
        for (std::uint32_t c = 1; c < p; ++c) {
            auto w = isotropy_bruteforce({1, mod_neg(c, p)}, p);
            REQUIRE(w.has_value() == oracle::is_square_mod(c, p));
        }
    }

    REQUIRE_FALSE(isotropy_bruteforce({}, 5).has_value());
    REQUIRE_THROWS_AS(isotropy_bruteforce(std::vector<std::uint32_t>(30, 1), 5), resource_error);
}

TEST_CASE("binary Pfister isotropy matches the squares criterion", "[quadforms][oracle]") {
    DiagonalForm f = pfister_coefficients({{1}}, 1);  // <<t1>>
    for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
        for (std::uint32_t a = 1; a < p; ++a) {
            std::vector<std::uint32_t> coeffs = specialize(f, {a}, p);
            bool isotropic = isotropy_bruteforce(coeffs, p).has_value();
            REQUIRE(isotropic == oracle::is_square_mod(a, p));
        }
    }
}

TEST_CASE("specialization commutes with the Pfister construction", "[quadforms][property]") {
    std::mt19937 rng(13579);
    for (std::uint32_t p : {3u, 5u, 7u}) {
        std::uniform_int_distribution<std::uint32_t> val(1, p - 1);
        std::uniform_int_distribution<std::int64_t> exp(0, 4);
        for (int iter = 0; iter < 15; ++iter) {
            std::vector<std::vector<std::int64_t>> entries(2, std::vector<std::int64_t>(2));
            for (auto& e : entries)
                for (auto& x : e) x = exp(rng);
            std::vector<std::uint32_t> point = {val(rng), val(rng)};

            // route 1: build the form, then evaluate
            std::vector<std::uint32_t> lhs = specialize(pfister_coefficients(entries, 2), point, p);

            // route 2: evaluate the entries, then expand subsets numerically
            std::vector<std::uint32_t> entry_vals;
            for (const auto& e : entries) {
                std::uint32_t v = 1;
                for (std::size_t j = 0; j < e.size(); ++j)
                    v = mod_mul(v, mod_pow(point[j], mod_reduce(e[j], p - 1), p), p);
                entry_vals.push_back(v);
            }
            std::vector<std::uint32_t> rhs;
            for (std::uint32_t mask = 0; mask < 4; ++mask) {
                std::uint32_t v = 1;
                int bits = 0;
                for (std::uint32_t i = 0; i < 2; ++i)
                    if (mask & (1u << i)) {
                        v = mod_mul(v, entry_vals[i], p);
                        ++bits;
                    }
                rhs.push_back(bits % 2 ? mod_neg(v, p) : v);
            }
            REQUIRE(lhs == rhs);
        }
    }
}
