#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>
#include <openssl/evp.h>

#include "unram/certificate.hpp"

namespace unram {

using json = nlohmann::json;  // std::map-backed: object keys serialize sorted

// Canonical bytes: sorted keys, base-10 integers, no insignificant whitespace.
inline std::string canonical_dump(const json& j) { return j.dump(); }

inline std::string sha256_hex(std::string_view data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256: digest failure");
    static const char* hex = "0123456789abcdef";
    std::string out(static_cast<std::size_t>(len) * 2, '0');
    for (unsigned int i = 0; i < len; ++i) {
        out[2 * i] = hex[md[i] >> 4];
        out[2 * i + 1] = hex[md[i] & 0xf];
    }
    return out;
}

// ---- multivectors and subspaces ----

inline void to_json(json& j, const Multivector& v) {
    json terms = json::array();
    for (const auto& [k, c] : v.terms()) terms.push_back(json::array({json(k), json(c)}));
    j = json{{"degree", v.degree()},
             {"dim", v.dim()},
             {"mod", v.modulus()},
             {"space", space_name(v.space())},
             {"terms", std::move(terms)}};
}

inline void from_json(const json& j, Multivector& v) {
    Space space = j.at("space").get<std::string>() == "V" ? Space::primal : Space::dual;
    v = Multivector(j.at("degree").get<std::uint32_t>(), j.at("dim").get<std::uint32_t>(),
                    j.at("mod").get<std::uint32_t>(), space);
    for (const auto& t : j.at("terms"))
        v.add_term(t.at(0).get<IndexKey>(), t.at(1).get<std::int64_t>());
}

inline void to_json(json& j, const Subspace& s) {
    j = json{{"degree", s.degree()},
             {"dim", s.dim()},
             {"mod", s.modulus()},
             {"space", space_name(s.space())},
             {"basis", s.basis()}};
}

inline void from_json(const json& j, Subspace& s) {
    Space space = j.at("space").get<std::string>() == "V" ? Space::primal : Space::dual;
    auto basis = j.at("basis").get<std::vector<Multivector>>();
    s = Subspace::span(j.at("degree").get<std::uint32_t>(), j.at("dim").get<std::uint32_t>(),
                       j.at("mod").get<std::uint32_t>(), space, basis);
}

inline void to_json(json& j, const PureBasisElement& e) {
    j = json{{"element", e.element}, {"factors", e.factors}};
}

inline void from_json(const json& j, PureBasisElement& e) {
    e = PureBasisElement(j.at("element").get<Multivector>());
    e.factors = j.at("factors").get<std::vector<Multivector>>();
}

// ---- symbols ----

inline void to_json(json& j, const MonomialSymbol& s) {
    j = json{{"slots", s.n_slots}, {"vars", s.num_vars}, {"mod", s.modulus},
             {"exponents", s.exponents}};
}

inline void from_json(const json& j, MonomialSymbol& s) {
    s = MonomialSymbol(j.at("slots").get<std::uint32_t>(), j.at("vars").get<std::uint32_t>(),
                       j.at("mod").get<std::uint32_t>());
    auto rows = j.at("exponents").get<std::vector<std::vector<std::int64_t>>>();
    s = MonomialSymbol::from_rows(std::move(rows), s.num_vars, s.modulus);
}

// ---- quadratic forms ----

inline void to_json(json& j, const SignedMonomial& c) {
    j = json{{"sign", c.sign}, {"exps", c.exps}};
}

inline void from_json(const json& j, SignedMonomial& c) {
    c.sign = j.at("sign").get<int>();
    c.exps = j.at("exps").get<std::vector<std::int64_t>>();
    if (c.sign != 1 && c.sign != -1) throw parse_error("SignedMonomial: sign must be +1 or -1");
}

inline void to_json(json& j, const DiagonalForm& f) {
    j = json{{"coeffs", f.coeffs}, {"vars", f.num_vars}};
}

inline void from_json(const json& j, DiagonalForm& f) {
    f.coeffs = j.at("coeffs").get<std::vector<SignedMonomial>>();
    f.num_vars = j.at("vars").get<std::uint32_t>();
}

inline void to_json(json& j, const QuadricEquation& q) {
    j = json{{"form", q.form},
             {"variables", q.variables},
             {"projective_dim", q.projective_dim},
             {"symbol", q.symbol},
             {"polynomial", q.polynomial_string("t", static_cast<std::int64_t>(q.symbol.modulus))}};
}

inline void from_json(const json& j, QuadricEquation& q) {
    q.form = j.at("form").get<DiagonalForm>();
    q.variables = j.at("variables").get<std::uint32_t>();
    q.projective_dim = j.at("projective_dim").get<std::uint64_t>();
    q.symbol = j.at("symbol").get<MonomialSymbol>();
}

// ---- splitting plans ----

inline void to_json(json& j, const NormEquation& e) {
    j = json{{"multiplicity", e.multiplicity},
             {"parameter", e.parameter_exps},
             {"vars", e.num_vars},
             {"split_model", e.split_model_string()},
             {"base_space", e.base_space},
             {"quotient_note", e.quotient_note}};
}

inline void from_json(const json& j, NormEquation& e) {
    e.multiplicity = j.at("multiplicity").get<std::uint32_t>();
    e.parameter_exps = j.at("parameter").get<std::vector<std::int64_t>>();
    e.num_vars = j.at("vars").get<std::uint32_t>();
    e.base_space = j.at("base_space").get<std::string>();
    e.quotient_note = j.at("quotient_note").get<std::string>();
}

inline void to_json(json& j, const RostPlanNode& node) {
    j = json{{"prefix_len", node.prefix_len}, {"kind", node.kind}, {"dim", node.dim}};
    if (node.norm) j["norm"] = *node.norm;
}

inline void from_json(const json& j, RostPlanNode& node) {
    node.prefix_len = j.at("prefix_len").get<std::uint32_t>();
    node.kind = j.at("kind").get<std::string>();
    node.dim = j.at("dim").get<std::int64_t>();
    if (j.contains("norm")) node.norm = j.at("norm").get<NormEquation>();
}

inline void to_json(json& j, const RostPlan& p) {
    j = json{{"symbol", p.symbol}, {"ell", p.ell}, {"nodes", p.nodes},
             {"open_flags", p.open_flags}};
}

inline void from_json(const json& j, RostPlan& p) {
    p.symbol = j.at("symbol").get<MonomialSymbol>();
    p.ell = j.at("ell").get<std::uint32_t>();
    p.nodes = j.at("nodes").get<std::vector<RostPlanNode>>();
    p.open_flags = j.at("open_flags").get<std::vector<std::string>>();
}

// ---- certificates ----

inline void to_json(json& j, const CheckResult& c) {
    j = json{{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}};
}

inline void from_json(const json& j, CheckResult& c) {
    c.name = j.at("name").get<std::string>();
    c.pass = j.at("pass").get<bool>();
    c.witness = j.at("witness").get<std::string>();
}

inline void to_json(json& j, const CitedClaim& c) {
    j = json{{"claim", c.claim}, {"source", c.source}};
}

inline void from_json(const json& j, CitedClaim& c) {
    c.claim = j.at("claim").get<std::string>();
    c.source = j.at("source").get<std::string>();
}

inline void to_json(json& j, const CertificateDims& d) {
    j = json{{"per_variety", d.per_variety}, {"total", d.total}, {"lower_bound", d.lower_bound}};
}

inline void from_json(const json& j, CertificateDims& d) {
    d.per_variety = j.at("per_variety").get<std::vector<std::int64_t>>();
    d.total = j.at("total").get<std::int64_t>();
    d.lower_bound = j.at("lower_bound").get<std::int64_t>();
}

inline void to_json(json& j, const Certificate& cert) {
    json varieties;
    if (cert.ell == 2)
        varieties = json{{"kind", "pfister_quadrics"}, {"items", cert.quadrics}};
    else
        varieties = json{{"kind", "rost_plans"}, {"items", cert.plans}};
    j = json{{"params", json{{"n", cert.n}, {"ell", cert.ell}}},
             {"field_setup", json{{"k", cert.field_k},
                                  {"k_prime", cert.field_k_prime},
                                  {"duality_convention", cert.duality_convention}}},
             {"omega", cert.omega},
             {"s_perp", cert.s_perp},
             {"basis_i", cert.basis_I},
             {"symbols", cert.symbols},
             {"varieties", std::move(varieties)},
             {"induction_order", cert.induction_order},
             {"dims", cert.dims},
             {"checks", cert.checks},
             {"cited_claims", cert.cited_claims}};
}

inline void from_json(const json& j, Certificate& cert) {
    cert.n = j.at("params").at("n").get<std::uint32_t>();
    cert.ell = j.at("params").at("ell").get<std::uint32_t>();
    cert.field_k = j.at("field_setup").at("k").get<std::string>();
    cert.field_k_prime = j.at("field_setup").at("k_prime").get<std::string>();
    cert.duality_convention = j.at("field_setup").at("duality_convention").get<std::string>();
    cert.omega = j.at("omega").get<Multivector>();
    cert.s_perp = j.at("s_perp").get<Subspace>();
    cert.basis_I = j.at("basis_i").get<std::vector<PureBasisElement>>();
    cert.symbols = j.at("symbols").get<std::vector<MonomialSymbol>>();
    const json& v = j.at("varieties");
    std::string kind = v.at("kind").get<std::string>();
    if (kind == "pfister_quadrics")
        cert.quadrics = v.at("items").get<std::vector<QuadricEquation>>();
    else if (kind == "rost_plans")
        cert.plans = v.at("items").get<std::vector<RostPlan>>();
    else
        throw parse_error("certificate: unknown variety kind '" + kind + "'");
    cert.induction_order = j.at("induction_order").get<std::vector<std::uint32_t>>();
    cert.dims = j.at("dims").get<CertificateDims>();
    cert.checks = j.at("checks").get<std::vector<CheckResult>>();
    cert.cited_claims = j.at("cited_claims").get<std::vector<CitedClaim>>();
}

/// Versioned envelope around a certificate payload: the checksum is the
/// SHA-256 of the canonical payload bytes, enabling third-party re-verification.
struct CertificateDocument {
    std::string schema_version = "1";
    json payload;
    std::string checksum;

    static CertificateDocument wrap(const Certificate& cert) {
        CertificateDocument doc;
        doc.payload = cert;
        doc.checksum = sha256_hex(canonical_dump(doc.payload));
        return doc;
    }

    json to_json_value() const {
        return json{{"schema_version", schema_version}, {"payload", payload}, {"checksum", checksum}};
    }

    std::string dump() const { return canonical_dump(to_json_value()); }

    // Parses and validates structure + checksum. Throws parse_error on any defect.
    static CertificateDocument parse(const std::string& text) {
        json j = json::parse(text, nullptr, false);
        if (j.is_discarded()) throw parse_error("document: not valid JSON");
        if (!j.is_object() || !j.contains("schema_version") || !j.contains("payload") ||
            !j.contains("checksum"))
            throw parse_error("document: missing schema_version/payload/checksum");
        CertificateDocument doc;
        if (!j.at("schema_version").is_string() ||
            (doc.schema_version = j.at("schema_version").get<std::string>()) != "1")
            throw parse_error("document: unsupported schema_version");
        doc.payload = j.at("payload");
        doc.checksum = j.at("checksum").get<std::string>();
        if (sha256_hex(canonical_dump(doc.payload)) != doc.checksum)
            throw parse_error("document: checksum does not match canonical payload bytes");
        return doc;
    }

    Certificate certificate() const {
        try {
            return payload.get<Certificate>();
        } catch (const parse_error&) {
            throw;
        } catch (const std::exception& e) {
            throw parse_error(std::string("document payload: ") + e.what());
        }
    }
};

inline void write_document(const CertificateDocument& doc, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw parse_error("cannot open '" + path + "' for writing");
    out << doc.dump();
    out << "\n";
    if (!out) throw parse_error("write failed for '" + path + "'");
}

inline CertificateDocument load_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    // tolerate one trailing newline from write_document
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    return CertificateDocument::parse(text);
}

}  // namespace unram
