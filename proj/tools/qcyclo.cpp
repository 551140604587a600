// qcyclo: command-line front end. Single-n verification, bulk scans with
// checkpoint/resume, unit / class-number / evaluation queries, and
// machine-readable JSON everywhere. Exit codes: 0 all checks pass, 1 a
// mathematical check failed (or a conjecture counterexample turned up),
// 2 invalid input.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "qcyclo/scan.hpp"

namespace {

using qcyclo::Json;

void write_output(const Json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(out_path, std::ios::trunc);
  if (!f) throw qcyclo::input_error("cannot open output path " + out_path);
  f << j.dump(2) << '\n';
}

qcyclo::EvalPoint parse_eval_point(const std::string& s) {
  if (s == "i") return qcyclo::EvalPoint::I;
  if (s == "-i") return qcyclo::EvalPoint::MinusI;
  if (s == "1") return qcyclo::EvalPoint::One;
  throw qcyclo::input_error("--at must be one of: i, -i, 1");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification of unit / class-number identities in real quadratic fields"};
  app.require_subcommand(1);
  app.fallthrough();

  long precision_bits = 256;
  unsigned jobs = 0;
  std::string out_path;
  bool resume = false;
  app.add_option("--precision-bits", precision_bits, "working precision in bits")
      ->envname("QCYCLO_PRECISION_BITS")
      ->capture_default_str();
  app.add_option("--jobs", jobs, "worker threads (default: available parallelism)");
  app.add_option("--out", out_path, "output path (default: stdout)");
  app.add_flag("--resume", resume, "resume a checkpointed scan");

  auto* verify = app.add_subcommand("verify", "verify the residue-product identity at one n");
  long verify_n_value = 0;
  bool exact = false;
  verify->add_option("--n", verify_n_value, "squarefree n == 3 (mod 4), n > 3")->required();
  verify->add_flag("--exact", exact, "also run the exact cyclotomic-integer backend");

  auto* scan = app.add_subcommand("scan", "bulk scan over a range, one JSONL record per n");
  std::string kind_name = "theorem";
  long scan_min = 0, scan_max = 0;
  scan->add_option("--kind", kind_name, "theorem | aac | congruences")->required();
  scan->add_option("--min", scan_min, "range start (inclusive)")->required();
  scan->add_option("--max", scan_max, "range end (inclusive)")->required();

  auto* unit = app.add_subcommand("unit", "fundamental unit of a fundamental discriminant");
  long unit_disc = 0;
  unit->add_option("--disc", unit_disc, "positive fundamental discriminant")->required();

  auto* classnum = app.add_subcommand("classnum", "class number of a quadratic field");
  long cn_disc = 0;
  classnum->add_option("--disc", cn_disc, "fundamental discriminant (positive or negative)")
      ->required();

  auto* eval = app.add_subcommand("eval", "numeric residue product at i, -i or 1");
  long eval_n = 0;
  std::string at = "i";
  eval->add_option("--n", eval_n, "squarefree n == 3 (mod 4), n > 3")->required();
  eval->add_option("--at", at, "evaluation point: i, -i or 1")->capture_default_str();

  auto* gauss = app.add_subcommand("gauss", "Y/Z decomposition of the p-th cyclotomic polynomial");
  long gauss_p = 0;
  gauss->add_option("--p", gauss_p, "odd prime")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) {
      qcyclo::VerifyOptions opt;
      opt.precision_bits = precision_bits;
      opt.exact_backend = exact;
      qcyclo::VerificationReport rep = qcyclo::verify_n(verify_n_value, opt);
      write_output(qcyclo::report_to_json(rep, "theorem"), out_path);
      return rep.ok() ? 0 : 1;
    }
    if (*scan) {
      qcyclo::ScanOptions opt;
      opt.kind = qcyclo::scan_kind_from_string(kind_name);
      opt.min = scan_min;
      opt.max = scan_max;
      opt.jobs = jobs;
      opt.out_path = out_path;
      opt.resume = resume;
      opt.precision_bits = precision_bits;
      qcyclo::ScanSummary sum = qcyclo::run_scan(opt);
      std::cerr << "scan " << kind_name << " [" << scan_min << ", " << scan_max << "]: "
                << sum.records << " records, " << sum.failures << " failures\n";
      return sum.exit_code();
    }
    if (*unit) {
      qcyclo::QuadNumber u = qcyclo::fundamental_unit(unit_disc);
      long norm = static_cast<long>(mpz_class(u.norm().get_num()).get_si());
      write_output(Json{{"disc", unit_disc},
                        {"u", u.a().get_str()},
                        {"v", u.b().get_str()},
                        {"den", u.den()},
                        {"norm", norm}},
                   out_path);
      return 0;
    }
    if (*classnum) {
      long h = 0;
      if (cn_disc > 0) {
        qcyclo::QuadNumber u = qcyclo::fundamental_unit(cn_disc);
        h = qcyclo::h_real(cn_disc, u, std::max(256L, precision_bits));
      } else {
        long a = -cn_disc;
        if (a > 3 && a % 4 == 3 && qcyclo::is_squarefree(static_cast<std::uint64_t>(a))) {
          h = qcyclo::h_imag(a);
        } else if (a % 8 == 0 && (a / 8) % 8 == 7 &&
                   qcyclo::is_prime(static_cast<std::uint64_t>(a / 8))) {
          h = qcyclo::h_imag_8p(a / 8);
        } else {
          throw qcyclo::input_error(
              "negative discriminant must be -n (n squarefree, == 3 mod 4) or -8p (p prime, == 7 mod 8)");
        }
      }
      write_output(Json{{"disc", cn_disc}, {"h", h}}, out_path);
      return 0;
    }
    if (*eval) {
      long prec = std::max(64L, precision_bits);
      qcyclo::BigComplex v = qcyclo::sn_eval_numeric(eval_n, parse_eval_point(at), prec);
      write_output(Json{{"n", eval_n},
                        {"at", at},
                        {"precision_bits", prec},
                        {"re", v.re().str()},
                        {"im", v.im().str()},
                        {"error_ulps_bound",
                         qcyclo::euler_phi(static_cast<std::uint64_t>(eval_n))}},
                   out_path);
      return 0;
    }
    if (*gauss) {
      qcyclo::GaussDecomposition g = qcyclo::gauss_decomposition(gauss_p);
      Json y = Json::array(), z = Json::array();
      for (const mpz_class& c : g.Y) y.push_back(c.get_str());
      for (const mpz_class& c : g.Z) z.push_back(c.get_str());
      long pstar = (gauss_p % 4 == 1) ? gauss_p : -gauss_p;
      write_output(Json{{"p", gauss_p},
                        {"pstar", pstar},
                        {"Y", y},
                        {"Z", z},
                        {"identity_checked", true}},
                   out_path);
      return 0;
    }
  } catch (const qcyclo::input_error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
