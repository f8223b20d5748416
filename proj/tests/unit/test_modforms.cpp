#include "doctest.h"
#include "eiscong/error.hpp"
#include "eiscong/exactmath/bernoulli.hpp"
#include "eiscong/exactmath/factor.hpp"
#include "eiscong/modforms/modforms.hpp"

using namespace eiscong;
using namespace eiscong::mf;

namespace {

// Naive sigma_r(n) for the Eisenstein oracle.
Integer sigma(unsigned r, unsigned n) {
  Integer s = 0;
  for (unsigned d = 1; d <= n; ++d) {
    if (n % d == 0) s += exact::ipow(Integer(d), r);
  }
  return s;
}

exact::Matrix<Rational> product(const exact::Matrix<Rational>& a, const exact::Matrix<Rational>& b) {
  return exact::mat_mul(a, b, Rational(0));
}

std::vector<std::uint64_t> primes_to(std::uint64_t n) { return exact::primes_up_to(n); }

}  // namespace

TEST_CASE("Eisenstein series") {
  auto e4 = eisenstein(4, 3);
  CHECK(e4[0] == 1);
  CHECK(e4[1] == 240);
  CHECK(e4[2] == 2160);
  auto e12 = eisenstein(12, 2);
  CHECK(e12[1] == Rational(65520, 691));
  for (int k = 4; k <= 30; k += 2) {
    auto e = eisenstein(k, 12);
    CHECK(e[0] == 1);
    for (unsigned n = 1; n < 12; ++n) {
      CHECK(e[n] == Rational(-2 * k) / exact::bernoulli(static_cast<unsigned>(k)) * Rational(sigma(static_cast<unsigned>(k - 1), n)));
    }
  }
  CHECK_THROWS_AS(eisenstein(5, 4), PreconditionError);
  CHECK_THROWS_AS(eisenstein(2, 4), PreconditionError);
}

TEST_CASE("Delta and the E4^3 - E6^2 identity") {
  auto d = delta(201);
  CHECK(d[0] == 0);
  CHECK(d[1] == 1);
  CHECK(d[2] == -24);
  CHECK(d[3] == 252);
  auto e4 = eisenstein(4, 201), e6 = eisenstein(6, 201);
  auto rhs = e4 * e4 * e4 - e6 * e6;
  CHECK(rhs.weight == 12);
  for (std::size_t n = 0; n < 201; ++n) CHECK(Rational(1728) * d[n] == rhs[n]);
}

TEST_CASE("Miller basis") {
  auto b12 = miller_basis(12, 20);
  REQUIRE(b12.size() == 1);
  CHECK(b12[0].coeffs == delta(20).coeffs);
  CHECK(miller_basis(10, 20).empty());
  auto b24 = miller_basis(24, 20);
  REQUIRE(b24.size() == 2);
  CHECK(b24[0][1] == 1);
  CHECK(b24[0][2] == 0);
  CHECK(b24[1][1] == 0);
  CHECK(b24[1][2] == 1);
  for (int k = 12; k <= 60; k += 2) CHECK(static_cast<int>(miller_basis(k, 40).size()) == cusp_dimension(k));
  CHECK_THROWS_WITH(miller_basis(24, 2), doctest::Contains("insufficient precision"));
}

TEST_CASE("Hecke operators on Delta") {
  auto d = delta(301);
  auto t2 = hecke_op(d, 2);
  CHECK(t2.prec() == 151);
  for (std::size_t n = 0; n < t2.prec(); ++n) CHECK(t2[n] == Rational(-24) * d[n]);
  CHECK(hecke_op(d, 1) == d);
  auto t23 = hecke_op(hecke_op(d, 3), 2);
  auto t6 = hecke_op(d, 6);
  for (std::size_t n = 0; n < std::min(t23.prec(), t6.prec()); ++n) CHECK(t23[n] == t6[n]);
}

TEST_CASE("Hecke matrices commute") {
  for (int k = 12; k <= 28; k += 2) {
    for (unsigned m : {2u, 3u, 5u}) {
      for (unsigned n : {2u, 3u, 5u}) {
        auto a = hecke_matrix(k, m), b = hecke_matrix(k, n);
        CHECK(product(a, b) == product(b, a));
      }
    }
  }
}

TEST_CASE("eigen systems at level 1") {
  auto primes = primes_to(50);
  auto s12 = eigen_systems_level1(12, primes, required_precision(12, 50));
  REQUIRE(s12.size() == 1);
  CHECK(s12[0].field->degree() == 1);
  auto d = delta(60);
  for (auto q : primes) CHECK(s12[0].at(q).to_rational() == d[q]);

  auto s24 = eigen_systems_level1(24, {2, 3, 5}, required_precision(24, 5));
  REQUIRE(s24.size() == 1);
  CHECK(s24[0].field->degree() == 2);
  // a_2 has minimal polynomial x^2 - 1080x - 20468736
  CHECK(s24[0].at(2).charpoly() == exact::PolyQ{-20468736, -1080, 1});

  CHECK(eigen_systems_level1(10, primes, 200).empty());
  CHECK_THROWS_WITH(eigen_systems_level1(24, {2, 3, 5}, 10), doctest::Contains("insufficient precision"));

  for (int k = 12; k <= 40; k += 2) {
    auto systems = eigen_systems_level1(k, {2, 3, 5, 7}, required_precision(k, 7));
    int total = 0;
    for (auto& s : systems) {
      total += s.field->degree();
      CHECK(s.expansion[1] == nf::NFElement::from_rational(s.field, 1));
      for (std::uint64_t q : {2u, 3u}) {
        // a_{q^2} = a_q^2 - q^{k-1}
        auto aq = s.at(q);
        auto lhs = s.expansion[q * q];
        auto rhs = aq * aq - nf::NFElement::from_rational(s.field, Rational(exact::ipow(Integer(static_cast<unsigned long>(q)), static_cast<unsigned long>(k - 1))));
        CHECK(lhs == rhs);
      }
      // multiplicativity a_6 = a_2 a_3
      CHECK(s.expansion[6] == s.at(2) * s.at(3));
    }
    CHECK(total == cusp_dimension(k));
  }
}

TEST_CASE("Hecke matrix traces match eigenvalue traces") {
  for (int k = 12; k <= 28; k += 2) {
    auto systems = eigen_systems_level1(k, {2, 3, 5, 7, 11, 13, 17, 19}, required_precision(k, 20));
    for (unsigned m = 1; m <= 20; ++m) {
      auto M = hecke_matrix(k, m);
      Rational tr = 0;
      for (std::size_t i = 0; i < M.size(); ++i) tr += M[i][i];
      Rational eig = 0;
      for (auto& s : systems) eig += s.expansion[m].trace();
      CHECK(tr == eig);
    }
  }
}
