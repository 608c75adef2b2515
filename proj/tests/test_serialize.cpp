#include <catch2/catch_amalgamated.hpp>

#include <cstdio>

#include "unram/certificate.hpp"
#include "unram/serialize.hpp"

using namespace unram;

TEST_CASE("sha256 known answers", "[serialize]") {
    REQUIRE(sha256_hex("") ==
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    REQUIRE(sha256_hex("abc") ==
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("canonical dump sorts keys and strips whitespace", "[serialize]") {
    json j;
    j["zebra"] = 1;
    j["alpha"] = json::array({1, 2, 3});
    j["mid"] = json{{"b", 2}, {"a", 1}};
    REQUIRE(canonical_dump(j) == R"({"alpha":[1,2,3],"mid":{"a":1,"b":2},"zebra":1})");
}

TEST_CASE("multivector and subspace round-trip", "[serialize]") {
    Multivector v(2, 4, 3, Space::dual);
    v.add_term({1, 3}, 2);
    v.add_term({2, 4}, 1);
    json j = v;
    REQUIRE(j.get<Multivector>() == v);

    Subspace s = orthogonal_complement(Subspace::span_of({construction_omega(2, 3)}));
    json js = s;
    REQUIRE(js.get<Subspace>() == s);
}

TEST_CASE("symbol, quadric and plan round-trip", "[serialize]") {
    MonomialSymbol sym = MonomialSymbol::from_rows({{1, 0, 2}, {0, -1, 1}}, 3, 5);
    json j = sym;
    REQUIRE(j.get<MonomialSymbol>() == sym);

    QuadricEquation q = small_pfister_quadric(MonomialSymbol::from_rows({{1, 0}, {0, 1}}, 2, 2));
    json jq = q;
    QuadricEquation q2 = jq.get<QuadricEquation>();
    REQUIRE(q2.form == q.form);
    REQUIRE(q2.variables == q.variables);
    REQUIRE(q2.symbol == q.symbol);

    RostPlan p = rost_plan(MonomialSymbol::from_rows({{1, 0}, {0, 1}}, 2, 3), 3);
    json jp = p;
    RostPlan p2 = jp.get<RostPlan>();
    REQUIRE(p2.ell == p.ell);
    REQUIRE(p2.nodes.size() == p.nodes.size());
    REQUIRE(p2.dimension() == p.dimension());

    // equal inputs produce byte-identical serialized plans
    MonomialSymbol sym5 = MonomialSymbol::from_rows(
        {{1, 0, 0}, {0, 1, 0}, {0, 0, 2}, {1, 1, 0}}, 3, 5);
    REQUIRE(canonical_dump(json(rost_plan(sym5, 5))) == canonical_dump(json(rost_plan(sym5, 5))));
}

TEST_CASE("document round-trip is byte identical", "[serialize]") {
    Certificate cert = build_construction(2, 2);
    CertificateDocument doc = CertificateDocument::wrap(cert);
    std::string bytes = doc.dump();

    CertificateDocument parsed = CertificateDocument::parse(bytes);
    REQUIRE(parsed.dump() == bytes);
    REQUIRE(parsed.checksum == doc.checksum);

    Certificate back = parsed.certificate();
    REQUIRE(CertificateDocument::wrap(back).dump() == bytes);
}

TEST_CASE("document parsing rejects defects", "[serialize]") {
    Certificate cert = build_construction(2, 2);
    CertificateDocument doc = CertificateDocument::wrap(cert);
    std::string bytes = doc.dump();

    REQUIRE_THROWS_AS(CertificateDocument::parse("not json"), parse_error);
    REQUIRE_THROWS_AS(CertificateDocument::parse(bytes.substr(0, bytes.size() / 2)), parse_error);
    REQUIRE_THROWS_AS(CertificateDocument::parse("{}"), parse_error);

    // checksum guards the payload bytes
    json j = json::parse(bytes);
    j["payload"]["params"]["n"] = 3;
    REQUIRE_THROWS_AS(CertificateDocument::parse(j.dump()), parse_error);

    // version gate
    json j2 = json::parse(bytes);
    j2["schema_version"] = "2";
    REQUIRE_THROWS_AS(CertificateDocument::parse(j2.dump()), parse_error);
}

TEST_CASE("file write and load round-trip", "[serialize]") {
    Certificate cert = build_construction(2, 3);
    CertificateDocument doc = CertificateDocument::wrap(cert);
    std::string path = "test_cert_roundtrip.json";
    write_document(doc, path);
    CertificateDocument loaded = load_document(path);
    REQUIRE(loaded.dump() == doc.dump());
    std::remove(path.c_str());
}
