// Command-line front end: construct and verify certificates, plus symbol and
// quadratic-form calculators. Exit codes are a contract:
//   0 ok, 1 usage/parse error, 2 resource cap, 3 malformed document,
//   4 verification failure.
// Machine-readable results go to stdout, diagnostics to stderr.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "unram/certificate.hpp"
#include "unram/serialize.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitResource = 2;
constexpr int kExitMalformed = 3;
constexpr int kExitVerifyFailed = 4;

std::uint32_t default_cap() {
    if (const char* env = std::getenv("UNRAM_CAP")) {
        try {
            unsigned long v = std::stoul(env);
            if (v >= 2) return static_cast<std::uint32_t>(v);
        } catch (...) {
            // fall through to the built-in default
        }
    }
    return unram::kDefaultMaxN;
}

int run_construct(std::uint32_t n, std::uint32_t ell, const std::string& out_path, std::uint32_t cap) {
    unram::BuildOptions opts;
    opts.max_n = cap;
    unram::Certificate cert = unram::build_construction(n, ell, opts);
    unram::CertificateDocument doc = unram::CertificateDocument::wrap(cert);
    unram::write_document(doc, out_path);
    unram::DimensionReport dims = unram::expected_dimension(cert);
    std::cout << "|I|=" << cert.family_size() << " total_dim=" << dims.total << "\n";
    return kExitOk;
}

int run_verify(const std::string& path) {
    unram::Certificate cert;
    std::string checksum;
    try {
        unram::CertificateDocument doc = unram::load_document(path);
        checksum = doc.checksum;
        cert = doc.certificate();
    } catch (const unram::parse_error& e) {
        std::cerr << "malformed document: " << e.what() << "\n";
        return kExitMalformed;
    }
    unram::VerificationReport rep = unram::verify_certificate(cert);
    unram::json out{{"accepted", rep.accepted}, {"checks", rep.checks}, {"checksum", checksum}};
    std::cout << out.dump() << "\n";
    if (!rep.accepted) {
        std::cerr << "verification failed at " << rep.first_failure << "\n";
        return kExitVerifyFailed;
    }
    return kExitOk;
}

int run_residue(const std::string& symbol_text, std::uint32_t var, std::uint32_t ell,
                std::uint32_t vars) {
    unram::ParsedSymbol parsed = unram::parse_symbol_text(symbol_text);
    std::uint32_t m = vars != 0 ? vars : parsed.max_index;
    if (m == 0) m = 1;
    unram::MonomialSymbol s = parsed.to_symbol(m, ell);
    unram::SymbolClass c = unram::normalize(s);
    std::cout << unram::residue(c, var).to_string() << "\n";
    return kExitOk;
}

int run_pfister(const std::string& symbol_text) {
    unram::ParsedSymbol parsed = unram::parse_symbol_text(symbol_text);
    if (parsed.slots.empty()) throw unram::parse_error("pfister: symbol must have at least one entry");
    std::uint32_t m = parsed.max_index == 0 ? 1 : parsed.max_index;
    unram::MonomialSymbol s = parsed.to_symbol(m, 2);
    unram::QuadricEquation q = unram::small_pfister_quadric(s);
    std::cout << q.polynomial_string(parsed.letter, 1) << "\n";
    return kExitOk;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string piece = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(piece, &used));
            if (used != piece.size()) throw std::invalid_argument(piece);
        } catch (const std::exception&) {
            throw unram::parse_error("not an integer list: '" + text + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

int run_isotropy(const std::string& form_text, std::uint32_t prime, std::uint64_t cap) {
    std::vector<std::int64_t> raw = parse_int_list(form_text);
    if (!unram::is_prime(prime)) throw unram::parse_error("isotropy: --prime must be prime");
    std::vector<std::uint32_t> coeffs;
    for (std::int64_t v : raw) coeffs.push_back(unram::mod_reduce(v, prime));
    auto witness = unram::isotropy_bruteforce(coeffs, prime, cap);
    if (witness) {
        std::cout << "witness (";
        for (std::size_t i = 0; i < witness->size(); ++i) {
            if (i) std::cout << ",";
            std::cout << (*witness)[i];
        }
        std::cout << ")\n";
    } else {
        std::cout << "anisotropic\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic certificates for unramified-cohomology constructions"};
    app.require_subcommand(1);

    std::uint32_t n = 2, ell = 2, cap = default_cap();
    std::string out_path = "certificate.json";
    auto* construct = app.add_subcommand("construct", "build a certificate for (n, ell)");
    construct->add_option("--n", n, "symbol length n >= 2")->required();
    construct->add_option("--ell", ell, "prime ell")->required();
    construct->add_option("--out", out_path, "output document path");
    construct->add_option("--cap", cap, "largest allowed n");

    std::string verify_path;
    auto* verify = app.add_subcommand("verify", "re-check a certificate document");
    verify->add_option("path", verify_path, "certificate document")->required();

    std::string symbol_text;
    std::uint32_t var = 1, vars = 0, sym_ell = 2;
    auto* residue = app.add_subcommand("residue", "residue of a monomial symbol at ord_{t_j}");
    residue->add_option("--symbol", symbol_text, "symbol, e.g. \"{t1*t3^2, t2}\"")->required();
    residue->add_option("--var", var, "coordinate valuation index j (1-based)")->required();
    residue->add_option("--ell", sym_ell, "prime ell")->required();
    residue->add_option("--vars", vars, "number of variables m (default: max index used)");

    std::string pf_symbol;
    auto* pfister = app.add_subcommand("pfister", "small Pfister quadric of a symbol");
    pfister->add_option("--symbol", pf_symbol, "symbol, e.g. \"{a1,a2}\"")->required();

    std::string form_text;
    std::uint32_t prime = 3;
    std::uint64_t iso_cap = unram::kDefaultIsotropyCap;
    auto* isotropy = app.add_subcommand("isotropy", "brute-force isotropy of a diagonal form over F_p");
    isotropy->add_option("--form", form_text, "coefficients, e.g. 1,-1,3")->required();
    isotropy->add_option("--prime", prime, "prime p")->required();
    isotropy->add_option("--cap", iso_cap, "largest allowed p^k");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (construct->parsed()) return run_construct(n, ell, out_path, cap);
        if (verify->parsed()) return run_verify(verify_path);
        if (residue->parsed()) return run_residue(symbol_text, var, sym_ell, vars);
        if (pfister->parsed()) return run_pfister(pf_symbol);
        if (isotropy->parsed()) return run_isotropy(form_text, prime, iso_cap);
    } catch (const unram::resource_error& e) {
        std::cerr << e.what() << "\n";
        return kExitResource;
    } catch (const unram::construction_error& e) {
        std::cerr << e.what() << "\n";
        return kExitResource;
    } catch (const unram::parse_error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const unram::input_error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
