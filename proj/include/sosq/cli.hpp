#pragma once

// Command-line front end: `sosq certify | verify | inspect`.
//
// Exit codes: 0 success / valid, 1 usage, parse or I/O error,
// 2 hypothesis violated, 3 not non-negative or invalid certificate,
// 4 precision exhausted.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sosq/sosq.hpp"

namespace sosq::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kHypothesis = 2,
  kNotNonnegative = 3,
  kPrecision = 4,
};

inline constexpr const char* kSeedEnv = "SOS_CERT_SEED";

namespace detail {

inline double parse_factor(const std::string& text) {
  const Poly p = parse_poly(text);
  if (!p.is_constant()) throw ParseError(1, 0, "lambda factor must be a number");
  return p.coeff(0).get_d();
}

inline std::uint64_t seed_from_env() {
  const char* v = std::getenv(kSeedEnv);
  if (v == nullptr || *v == '\0') return kDefaultFactorSeed;
  std::size_t used = 0;
  const unsigned long long s = std::stoull(v, &used, 0);
  if (used != std::string(v).size()) throw std::invalid_argument(std::string(kSeedEnv) + " is not an integer");
  return s;
}

inline int certify(const std::string& f_text, const std::string& g_text, const std::string& out_path,
                   CertifyOptions opts, const std::string& lambda_text, bool pretty_out, std::ostream& out,
                   std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  Poly f, g;
  try {
    f = parse_poly(f_text);
    g = parse_poly(g_text);
    opts.lambda_factor = parse_factor(lambda_text);
    if (!(opts.lambda_factor >= 1.0)) throw std::invalid_argument("--lambda-factor must be >= 1");
    opts.seed = seed_from_env();
  } catch (const ParseError& e) {
    err << "error: " << e.message() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  Certificate cert;
  try {
    cert = certify_nonnegative(f, g, opts);
  } catch (const NotNonnegativeError& e) {
    err << "not non-negative: g is negative at a real root of the factor " << e.factor().to_string() << "\n"
        << "witness: x ~ " << std::setprecision(17) << e.root() << ", g(x) ~ " << e.value() << "\n";
    return kNotNonnegative;
  } catch (const NotStrictlyPositiveError& e) {
    err << "not non-negative: witness x ~ " << std::setprecision(17) << e.root() << ", g(x) ~ " << e.value()
        << "\n";
    return kNotNonnegative;
  } catch (const PrecisionExhaustedError& e) {
    err << "precision exhausted at " << e.precision_bits() << " bits (sigma ~ " << e.sigma() << ", rho ~ "
        << e.rho() << ")\n";
    return kPrecision;
  } catch (const Error& e) {
    err << e.what() << "\n";
    switch (e.code()) {
      case Errc::HypothesisViolated: return kHypothesis;
      case Errc::PrecisionExhausted:
      case Errc::RootClassificationUnstable:
      case Errc::IllConditioned: return kPrecision;
      default: return kUsage;
    }
  }
  const Verdict verdict = verify(cert);
  if (!verdict) {
    err << "internal error: emitted certificate fails verification (" << verdict.reason << ")\n";
    return kPrecision;
  }
  const std::string body = pretty_out ? pretty(cert) : serialize(cert);
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream summary;
  summary << "certified: " << cert.weights.size() << " terms, max coefficient bits " << max_coefficient_bits(cert)
          << ", time " << std::fixed << std::setprecision(1) << ms << " ms\n";
  if (out_path.empty()) {
    out << body;
    err << summary.str();
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file || !(file << body) || !file.flush()) {
      err << "error: cannot write " << out_path << "\n";
      return kUsage;
    }
    out << summary.str();
  }
  return kOk;
}

inline int verify_file(const std::string& path, std::ostream& out, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "error: cannot read " << path << "\n";
    return kUsage;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  Certificate cert;
  try {
    cert = deserialize(buf.str());
  } catch (const ParseError& e) {
    err << "parse error";
    if (e.line() > 0) err << " (line " << e.line() << ", column " << e.position() + 1 << ")";
    err << ": " << e.message() << "\n";
    return kUsage;
  }
  const Verdict v = verify(cert);
  if (!v) {
    out << "INVALID [" << v.clause << "]: " << v.reason << "\n";
    return kNotNonnegative;
  }
  out << "VALID: " << cert.weights.size() << " terms\n";
  return kOk;
}

inline int inspect(const std::string& f_text, const std::string& g_text, bool has_g, std::ostream& out,
                   std::ostream& err) {
  Poly f, g;
  try {
    f = parse_poly(f_text);
    if (has_g) g = parse_poly(g_text);
  } catch (const ParseError& e) {
    err << "error: " << e.message() << "\n";
    return kUsage;
  }
  out << "f = " << f.to_string() << "\n";
  if (f.is_zero() || f.is_constant()) {
    out << "f is constant; nothing to factor\n";
    return kOk;
  }
  out << "degree = " << f.degree().value() << "\n";
  try {
    FactorOptions fopts;
    fopts.seed = seed_from_env();
    const SquarefreeDecomposition sq = squarefree_decompose(f);
    out << "squarefree decomposition: " << to_string(sq.unit);
    for (const auto& p : sq.parts) out << " * (" << p.factor.to_string() << ")^" << p.multiplicity;
    out << "\n";
    const IrreducibleFactorization fac = factor_over_Q(f, fopts);
    out << "irreducible factors:\n";
    for (const auto& fe : fac.factors)
      out << "  (" << fe.p.to_string() << ")^" << fe.e << "  real roots: " << sturm_real_root_count(fe.p) << "\n";
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kUsage;
  }
  if (has_g) {
    out << "g = " << g.to_string() << "\n";
    if (g.is_zero()) {
      out << "hypothesis: OK (g = 0, empty certificate)\n";
      return kOk;
    }
    const Poly d = gcd(f, g);
    const Poly cof = quo(f, d);
    const Poly shared = gcd(d, cof);
    out << "d = gcd(f, g) = " << d.to_string() << "\n";
    out << "f/d = " << cof.to_string() << "\n";
    if (shared.is_constant()) out << "hypothesis: OK\n";
    else out << "hypothesis: VIOLATED (gcd(d, f/d) = " << shared.to_string() << ")\n";
  }
  return kOk;
}

}  // namespace detail

/// Runs the CLI on argv-style arguments (args[0] is the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact rational sum-of-squares certificates modulo a univariate polynomial", "sosq"};
  app.require_subcommand(1);

  std::string f_text, g_text, out_path, cert_path, lambda_text = "2";
  CertifyOptions opts;
  bool json_flag = false, pretty_flag = false;

  auto* cert_cmd = app.add_subcommand("certify", "Certify g >= 0 at the real roots of f");
  cert_cmd->add_option("--f", f_text, "Modulus f, e.g. \"x^3-2\"")->required();
  cert_cmd->add_option("--g", g_text, "Polynomial g")->required();
  cert_cmd->add_option("--out", out_path, "Write the certificate here instead of stdout");
  cert_cmd->add_option("--precision-bits", opts.precision_bits, "Initial mantissa bits")
      ->default_val(kDefaultPrecisionBits)
      ->check(CLI::Range(16L, kPrecisionCap));
  cert_cmd->add_option("--digits-cap", opts.digits_cap, "Largest number of rounding digits")
      ->default_val(64)
      ->check(CLI::Range(1, 100000));
  cert_cmd->add_option("--max-retries", opts.max_retries, "Precision doublings")
      ->default_val(3)
      ->check(CLI::Range(0, 64));
  cert_cmd->add_option("--lambda-factor", lambda_text, "lambda / |g(xi)| for complex roots (>= 1)")
      ->default_val("2");
  auto* json_opt = cert_cmd->add_flag("--json", json_flag, "JSON output (default)");
  auto* pretty_opt = cert_cmd->add_flag("--pretty", pretty_flag, "Human-readable output");
  json_opt->excludes(pretty_opt);

  auto* verify_cmd = app.add_subcommand("verify", "Check a certificate file exactly");
  verify_cmd->add_option("--cert", cert_path, "Certificate file")->required();

  auto* inspect_cmd = app.add_subcommand("inspect", "Factor f and check the gcd hypothesis");
  inspect_cmd->add_option("--f", f_text, "Polynomial f")->required();
  auto* g_opt = inspect_cmd->add_option("--g", g_text, "Polynomial g");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  if (cert_cmd->parsed()) {
    if (opts.precision_cap < opts.precision_bits) opts.precision_cap = opts.precision_bits;
    return detail::certify(f_text, g_text, out_path, opts, lambda_text, pretty_flag, out, err);
  }
  if (verify_cmd->parsed()) return detail::verify_file(cert_path, out, err);
  return detail::inspect(f_text, g_text, g_opt->count() > 0, out, err);
}

}  // namespace sosq::cli
