// Walks through three small cases end to end and prints every quantity the
// verification touches: class numbers, the fundamental unit, the counting
// functions, the reconstructed integer pair and the residual of the
// numeric cross-check.

#include <cstdio>

#include "qcyclo/theorem.hpp"

int main() {
  for (long n : {15L, 7L, 11L}) {
    qcyclo::VerifyOptions opt;
    opt.exact_backend = true;
    qcyclo::VerificationReport rep = qcyclo::verify_n(n, opt);
    std::printf("n = %ld (%s)\n", n, rep.prime_case ? "prime" : "composite");
    std::printf("  h(-%ld) = %ld, h(%ld) = %ld\n", n, rep.h_minus, 4 * n, rep.h_plus);
    std::printf("  fundamental unit: %s\n", rep.unit.str().c_str());
    if (rep.prime_case)
      std::printf("  alpha = %ld, beta = %ld, delta = %ld, lambda = %ld\n", rep.alpha,
                  rep.beta, rep.delta, rep.lambda);
    else
      std::printf("  alpha = %ld, delta = %ld, lambda = %ld\n", rep.alpha, rep.delta,
                  rep.lambda);
    std::printf("  pair: a = %s, b = %s\n", rep.a.get_str().c_str(), rep.b.get_str().c_str());
    std::printf("  residual: 2^%.1f, checks:", rep.residual_log2);
    for (const auto& c : rep.checks) std::printf(" %s=%s", c.name.c_str(), c.pass ? "ok" : "FAIL");
    std::printf("\n\n");
  }
  return 0;
}
