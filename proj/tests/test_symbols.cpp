#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "unram/symbols.hpp"

using namespace unram;

namespace {

MonomialSymbol random_symbol(std::mt19937& rng, std::uint32_t n, std::uint32_t m, std::uint32_t ell) {
    std::uniform_int_distribution<std::int64_t> exp(-3, 4);
    MonomialSymbol s(n, m, ell);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < m; ++j) s.exponents[i][j] = exp(rng);
    return s;
}

}  // namespace

TEST_CASE("normalize on the named examples", "[symbols]") {
    // {t1, t2} over two variables
    MonomialSymbol gen = MonomialSymbol::from_rows({{1, 0}, {0, 1}}, 2, 2);
    REQUIRE(normalize(gen).canonical() == Multivector::basis_element({1, 2}, 2, 2, Space::primal));

    // {t1, t1}: repeated slot dies
    MonomialSymbol rep = MonomialSymbol::from_rows({{1, 0}, {1, 0}}, 2, 2);
    REQUIRE(normalize(rep).is_zero());

    // {t1 t2^2, t1} over F_2: the square is an ell-th power, then repeated slot
    MonomialSymbol sq = MonomialSymbol::from_rows({{1, 2}, {1, 0}}, 2, 2);
    REQUIRE(normalize(sq).is_zero());
}

TEST_CASE("normalize agrees with the bilinear expansion oracle", "[symbols][oracle]") {
    std::mt19937 rng(2025);
    for (std::uint32_t ell : {2u, 3u, 5u}) {
        for (int iter = 0; iter < 40; ++iter) {
            MonomialSymbol s = random_symbol(rng, 3, 4, ell);
            REQUIRE(normalize(s).canonical().to_dense() == oracle::expand_symbol_class(s));
        }
    }
}

TEST_CASE("residue on the named examples", "[symbols]") {
    MonomialSymbol s = MonomialSymbol::from_rows({{1, 0, 0}, {0, 1, 0}}, 3, 2);
    SymbolClass c = normalize(s);

    SymbolClass r1 = residue(c, 1);
    REQUIRE(r1.canonical() == Multivector::basis_element({2}, 3, 2, Space::primal));

    REQUIRE(residue(c, 3).is_zero());

    SymbolClass r21 = residue(residue(c, 1), 2);
    REQUIRE(r21.degree() == 0);
    REQUIRE(r21.canonical().coeff({}) == 1);

    REQUIRE_THROWS_AS(residue(c, 0), input_error);
    REQUIRE_THROWS_AS(residue(c, 4), input_error);
}

TEST_CASE("residue agrees with the tame-symbol oracle", "[symbols][oracle]") {
    std::mt19937 rng(77);
    for (std::uint32_t ell : {2u, 3u, 5u}) {
        for (int iter = 0; iter < 40; ++iter) {
            MonomialSymbol s = random_symbol(rng, 3, 4, ell);
            SymbolClass c = normalize(s);
            for (std::uint32_t j = 1; j <= 4; ++j)
                REQUIRE(residue(c, j).canonical().to_dense() == oracle::expand_residue(s, j));
        }
    }
}

TEST_CASE("residue structure: nilpotence and anticommutation", "[symbols][property]") {
    std::mt19937 rng(31337);
    for (std::uint32_t ell : {2u, 3u}) {
        for (int iter = 0; iter < 25; ++iter) {
            MonomialSymbol s = random_symbol(rng, 3, 5, ell);
            SymbolClass c = normalize(s);
            for (std::uint32_t j = 1; j <= 5; ++j)
                REQUIRE(residue(residue(c, j), j).is_zero());
            for (std::uint32_t a = 1; a <= 5; ++a)
                for (std::uint32_t b = a + 1; b <= 5; ++b) {
                    Multivector lhs = residue(residue(c, a), b).canonical();
                    Multivector rhs = residue(residue(c, b), a).canonical();
                    REQUIRE(lhs == rhs.scaled(-1));
                }
        }
    }
}

TEST_CASE("unramifiedness at coordinate valuations", "[symbols]") {
    MonomialSymbol s = MonomialSymbol::from_rows({{1, 0, 0}, {0, 1, 0}}, 3, 2);
    SymbolClass c = normalize(s);
    REQUIRE(is_unramified_at(c, 3));
    REQUIRE_FALSE(is_unramified_at(c, 1));

    SymbolClass zero = normalize(MonomialSymbol::from_rows({{1, 0, 0}, {1, 0, 0}}, 3, 2));
    for (std::uint32_t j = 1; j <= 3; ++j) REQUIRE(is_unramified_at(zero, j));
}

TEST_CASE("iterated residue duality on standard symbols", "[symbols][property]") {
    // residues at j1 < ... < jn send {t_{j1},...,t_{jn}} to 1 and any other
    // standard symbol to 0; hence the standard family has full rank
    for (std::uint32_t ell : {2u, 3u}) {
        for (std::uint32_t m : {3u, 4u, 5u, 6u}) {
            for (std::uint32_t n : {1u, 2u, 3u}) {
                if (n > m) continue;
                std::vector<IndexKey> keys = all_keys(m, n);
                std::vector<SymbolClass> classes;
                for (const IndexKey& key : keys) {
                    MonomialSymbol s(n, m, ell);
                    for (std::uint32_t i = 0; i < n; ++i) s.exponents[i][key[i] - 1] = 1;
                    classes.push_back(normalize(s));
                }
                for (std::size_t a = 0; a < keys.size(); ++a) {
                    for (std::size_t b = 0; b < keys.size(); ++b) {
                        SymbolClass c = classes[b];
                        for (std::uint32_t i = n; i-- > 0;) c = residue(c, keys[a][i]);
                        REQUIRE(c.degree() == 0);
                        std::uint32_t v = c.canonical().coeff({});
                        if (a == b)
                            REQUIRE((v == 1 || v == ell - 1));
                        else
                            REQUIRE(v == 0);
                    }
                }
                REQUIRE(independence_rank(classes) == keys.size());
            }
        }
    }
}

TEST_CASE("independence rank on the named examples", "[symbols]") {
    auto sym = [](std::vector<std::vector<std::int64_t>> rows, std::uint32_t m, std::uint32_t ell) {
        return normalize(MonomialSymbol::from_rows(std::move(rows), m, ell));
    };
    std::vector<SymbolClass> three = {
        sym({{1, 0, 0}, {0, 1, 0}}, 3, 2),  // {t1,t2}
        sym({{1, 0, 0}, {0, 0, 1}}, 3, 2),  // {t1,t3}
        sym({{0, 1, 0}, {0, 0, 1}}, 3, 2),  // {t2,t3}
    };
    REQUIRE(independence_rank(three) == 3);

    std::vector<SymbolClass> swapped = {
        sym({{1, 0}, {0, 1}}, 2, 2),
        sym({{0, 1}, {1, 0}}, 2, 2),
    };
    REQUIRE(independence_rank(swapped) == 1);

    REQUIRE(independence_rank({}) == 0);

    std::vector<SymbolClass> mixed = {sym({{1, 0}}, 2, 2), sym({{1, 0}, {0, 1}}, 2, 2)};
    REQUIRE_THROWS_AS(independence_rank(mixed), input_error);
}

TEST_CASE("slot relations: swap negates, ell-th powers vanish", "[symbols][property]") {
    std::mt19937 rng(808);
    for (std::uint32_t ell : {2u, 3u, 5u}) {
        for (int iter = 0; iter < 25; ++iter) {
            MonomialSymbol s = random_symbol(rng, 3, 4, ell);
            MonomialSymbol swapped = s;
            std::swap(swapped.exponents[0], swapped.exponents[1]);
            REQUIRE(normalize(swapped).canonical() == normalize(s).canonical().scaled(-1));

            MonomialSymbol padded = s;
            for (std::uint32_t j = 0; j < 4; ++j) padded.exponents[1][j] += ell * (j + 1);
            REQUIRE(normalize(padded) == normalize(s));
        }
    }
}

TEST_CASE("phi maps pure dual wedges to symbols over the k-generators", "[symbols]") {
    // v1* ^ v3* with n = 2, ell = 2: slots t1^2, t3^2, i.e. exponent rows e1, e3
    Multivector s13 = Multivector::basis_element({1, 3}, 4, 2, Space::dual);
    MonomialSymbol sym = phi_symbol(s13);
    REQUIRE(sym == MonomialSymbol::from_rows({{1, 0, 0, 0}, {0, 0, 1, 0}}, 4, 2));
    REQUIRE(sym.to_string("t", 2) == "{t1^2, t3^2}");

    // (v1* + v3*) ^ (v2* + v4*)
    Multivector mixed = wedge_all({Multivector::from_coords({1, 0, 1, 0}, 2, Space::dual),
                                   Multivector::from_coords({0, 1, 0, 1}, 2, Space::dual)},
                                  2, 4, 2, Space::dual);
    MonomialSymbol msym = phi_symbol(mixed);
    REQUIRE(msym == MonomialSymbol::from_rows({{1, 0, 1, 0}, {0, 1, 0, 1}}, 4, 2));
    REQUIRE(msym.to_string("t", 2) == "{t1^2*t3^2, t2^2*t4^2}");

    // non-pure input rejected
    Multivector omega_dual(2, 4, 2, Space::dual);
    omega_dual.add_term({1, 2}, 1);
    omega_dual.add_term({3, 4}, 1);
    REQUIRE_THROWS_AS(phi_symbol(omega_dual), input_error);
    // zero multivector rejected: no factor slots
    REQUIRE_THROWS_AS(phi_symbol(Multivector(2, 4, 2, Space::dual)), input_error);
}

TEST_CASE("phi-image classes recover the wedge", "[symbols][property]") {
    std::mt19937 rng(4141);
    for (std::uint32_t ell : {2u, 3u, 5u}) {
        std::uniform_int_distribution<std::uint32_t> coeff(0, ell - 1);
        for (int iter = 0; iter < 20; ++iter) {
            FpRow a(4), b(4);
            for (std::uint32_t j = 0; j < 4; ++j) {
                a[j] = coeff(rng);
                b[j] = coeff(rng);
            }
            Multivector w = wedge(Multivector::from_coords(a, ell, Space::dual),
                                  Multivector::from_coords(b, ell, Space::dual));
            if (w.is_zero()) continue;
            MonomialSymbol sym = phi_symbol(w);
            Multivector back = normalize(sym).canonical();
            // same element up to the tag: phi records factor rows whose wedge is w
            REQUIRE(back.to_dense() == w.to_dense());
        }
    }
}

TEST_CASE("valuation normal form on the named examples", "[symbols]") {
    // {t1, t1 t2} at j = 1 over F_2
    MonomialSymbol s = MonomialSymbol::from_rows({{1, 0}, {1, 1}}, 2, 2);
    MonomialSymbol norm = normalize_at_valuation(s, 1);
    REQUIRE(norm.exponents[0][0] == 0);  // first slot now a unit at t1
    REQUIRE(normalize(norm) == normalize(s));
    REQUIRE(norm == MonomialSymbol::from_rows({{0, 1}, {1, 1}}, 2, 2));  // {t2, t1 t2}

    // already units: unchanged
    MonomialSymbol u = MonomialSymbol::from_rows({{0, 1, 0}, {0, 0, 1}}, 3, 2);
    REQUIRE(normalize_at_valuation(u, 1) == u);

    // {t1, t2} at j = 1: slot reordering with class preserved
    MonomialSymbol g = MonomialSymbol::from_rows({{1, 0}, {0, 1}}, 2, 2);
    MonomialSymbol gn = normalize_at_valuation(g, 1);
    REQUIRE(gn.exponents[0][0] == 0);
    REQUIRE(mod_reduce(gn.exponents[1][0], 2) == 1);
    REQUIRE(normalize(gn) == normalize(g));
}

TEST_CASE("valuation normal form preserves the class", "[symbols][property]") {
    std::mt19937 rng(909);
    for (std::uint32_t ell : {2u, 3u, 5u}) {
        for (int iter = 0; iter < 40; ++iter) {
            MonomialSymbol s = random_symbol(rng, 3, 4, ell);
            for (std::uint32_t j = 1; j <= 4; ++j) {
                MonomialSymbol norm = normalize_at_valuation(s, j);
                for (std::uint32_t i = 0; i + 1 < norm.n_slots; ++i)
                    REQUIRE(mod_reduce(norm.exponents[i][j - 1], ell) == 0);
                REQUIRE(normalize(norm) == normalize(s));
            }
        }
    }
}

TEST_CASE("restriction to k-prime kills every class", "[symbols]") {
    std::mt19937 rng(616);
    for (std::uint32_t ell : {2u, 3u, 5u}) {
        for (int iter = 0; iter < 10; ++iter) {
            MonomialSymbol s = random_symbol(rng, 2, 4, ell);
            MonomialSymbol restricted = restrict_to_kprime(s);
            REQUIRE(normalize(restricted).is_zero());
        }
    }
}

TEST_CASE("symbol text syntax round-trips", "[symbols]") {
    ParsedSymbol p = parse_symbol_text("{t1*t3^2, t2}");
    REQUIRE(p.letter == "t");
    REQUIRE(p.max_index == 3);
    MonomialSymbol s = p.to_symbol(3, 2);
    REQUIRE(s == MonomialSymbol::from_rows({{1, 0, 2}, {0, 1, 0}}, 3, 2));
    REQUIRE(s.to_string() == "{t1*t3^2, t2}");

    ParsedSymbol a = parse_symbol_text("{a1,a2}");
    REQUIRE(a.letter == "a");
    REQUIRE(a.slots.size() == 2);

    REQUIRE(parse_symbol_text("{ t1 ^ -1 , 1 }").to_symbol(1, 3) ==
            MonomialSymbol::from_rows({{-1}, {0}}, 1, 3));

    REQUIRE_THROWS_AS(parse_symbol_text("t1,t2"), parse_error);
    REQUIRE_THROWS_AS(parse_symbol_text("{t1,s2}"), parse_error);
    REQUIRE_THROWS_AS(parse_symbol_text("{t0}"), parse_error);
    REQUIRE_THROWS_AS(parse_symbol_text("{t1,}"), parse_error);
    REQUIRE_THROWS_AS(parse_symbol_text("{t1} junk"), parse_error);
}
