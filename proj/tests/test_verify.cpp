#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "axifem/mixed.hpp"
#include "axifem/verify.hpp"

using namespace axifem;

namespace {

bool all_pass(const std::vector<CheckResult>& results) {
  bool ok = true;
  for (const auto& r : results) {
    INFO(format_check(r));
    CHECK(r.passed);
    ok = ok && r.passed;
  }
  return ok;
}

}  // namespace

TEST_CASE("check result semantics") {
  CHECK(make_check("a", 1e-13, 1e-12).passed);
  CHECK_FALSE(make_check("a", 2e-12, 1e-12).passed);
  CHECK_FALSE(make_check("a", std::nan(""), 1.0).passed);
  CHECK(format_check(make_check("x", 0.0, 0.0)).find("PASS") != std::string::npos);
}

TEST_CASE("numerical rank") {
  Eigen::MatrixXd a(3, 3);
  a << 1, 2, 3, 2, 4, 6, 0, 1, 1;
  CHECK(numerical_rank(a.sparseView()) == 2);
  CHECK(numerical_rank(Eigen::MatrixXd::Identity(4, 4).sparseView()) == 4);
}

TEST_CASE("complex, Helmholtz and transfer checks") {
  MeshHierarchy sq(Domain::Square, 3);
  MeshHierarchy ls(Domain::LShape, 3);
  for (int kv : {1, -2}) {
    const FourierMode k(kv);
    CHECK(all_pass(check_complex(sq.level(3), k)));
    CHECK(all_pass(check_helmholtz(ls.level(2), k)));
    CHECK(all_pass(check_transfer(sq, 2, k)));
    CHECK(all_pass(check_transfer(ls, 3, k)));
    CHECK(all_pass(check_transfer(sq, 1, k)));
  }
}

TEST_CASE("commuting interpolation") {
  MeshHierarchy h(Domain::Square, 4);
  const FourierMode k(1);
  const ManufacturedSolution s = manufactured_solution(k);
  CHECK(check_commuting_interp(h.finest(), k, s.z, s.f).passed);
  // A field with div^k = 0: the curl of a B_1 polynomial.
  BElementCoeffs b;
  b.beta = {0.2, -0.4, 0.7, 0.1, 0.5, -0.3};
  const auto u = [&](Point2 x) { return curl_k_b(b, k, x); };
  const CheckResult r = check_commuting_interp(h.finest(), k, u, [](Point2) { return 0.0; });
  CHECK(r.passed);
  CHECK(r.residual < 1e-11);
}
