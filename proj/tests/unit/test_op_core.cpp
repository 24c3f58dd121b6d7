#include <cmath>
#include <vector>

#include <doctest.h>

#include "frozen.hpp"
#include "qdf/qdf.hpp"

using namespace qdf;

namespace {

std::vector<OperatorSpec> builtin_specs() {
  return {
      OperatorSpec::weighted_shift(WeightFormula::sqrt()),
      OperatorSpec::weighted_shift(WeightFormula::log()),
      OperatorSpec::adjoint_weighted_shift(WeightFormula::linear()),
      OperatorSpec::diagonal(WeightFormula::power(1.5)),
      OperatorSpec::dilation_shift(),
      OperatorSpec::example_a(),
      OperatorSpec::toeplitz({{-2, 0.5}, {-1, Complex(1, 1)}, {1, Complex(1, -1)}, {2, 0.5}}),
      OperatorSpec::hermite_q(),
      OperatorSpec::hermite_p(),
      OperatorSpec::creation(),
      OperatorSpec::annihilation(),
      OperatorSpec::sum({OperatorSpec::hermite_q(), OperatorSpec::scale(Complex(0, 2), OperatorSpec::hermite_p())}),
      OperatorSpec::product({OperatorSpec::weighted_shift(WeightFormula::sqrt()),
                             OperatorSpec::weighted_shift(WeightFormula::sqrt())}),
      OperatorSpec::product({OperatorSpec::hermite_q(), OperatorSpec::dilation_shift()}),
  };
}

Eigen::MatrixXcd projection_dense(Index rank, Index dim) {
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim, dim);
  for (Index i = 0; i < rank; ++i) p(i, i) = 1.0;
  return p;
}

}  // namespace

TEST_SUITE("op-core") {
  TEST_CASE("entries of named operators") {
    CHECK(entry(OperatorSpec::weighted_shift(WeightFormula::sqrt()), 5, 4) == Complex(2.0));
    CHECK(entry(OperatorSpec::weighted_shift(WeightFormula::sqrt()), 4, 5) == Complex(0.0));
    CHECK(entry(OperatorSpec::diagonal(WeightFormula::constant(0.0)), 7, 7) == Complex(0.0));
    const auto a = OperatorSpec::example_a();
    CHECK(entry(a, 2, 1) == Complex(1.0));
    CHECK(std::abs(entry(a, 4, 3) - Complex(1.0 / 3.0)) < 1e-16);
    CHECK(entry(a, 3, 3) == Complex(9.0));
    CHECK(entry(a, 4, 4) == Complex(16.0));
    CHECK(entry(OperatorSpec::dilation_shift(), 8, 4) == Complex(2.0));
    CHECK(std::abs(entry(OperatorSpec::creation(), 3, 2) - std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(entry(OperatorSpec::annihilation(), 2, 3) - std::sqrt(2.0)) < 1e-15);
    // log weight: w_1 = ln 1 = 0
    CHECK(entry(OperatorSpec::weighted_shift(WeightFormula::log()), 2, 1) == Complex(0.0));
  }

  TEST_CASE("entry rejects zero indices") {
    CHECK_THROWS_AS((void)entry(OperatorSpec::hermite_q(), 0, 1), Error);
  }

  TEST_CASE("capture bounds") {
    const auto shift = OperatorSpec::weighted_shift(WeightFormula::sqrt());
    CHECK(capture_bound(shift, 10) == 11);
    CHECK(capture_bound(OperatorSpec::product({shift, shift}), 10) == 12);
    CHECK(capture_bound(OperatorSpec::dilation_shift(), 10) == 20);
    CHECK(capture_bound(OperatorSpec::hermite_q(), 10) == 11);
  }

  TEST_CASE("propagation") {
    CHECK(OperatorSpec::weighted_shift(WeightFormula::sqrt()).propagation() == Index{1});
    CHECK(OperatorSpec::toeplitz({{-3, 1.0}, {2, 1.0}}).propagation() == Index{3});
    CHECK_FALSE(OperatorSpec::dilation_shift().propagation().has_value());
  }

  TEST_CASE("compressions") {
    const auto t = compress(OperatorSpec::toeplitz({{-1, 1.0}, {1, 1.0}}), 3).dense();
    Eigen::MatrixXcd expected(3, 3);
    expected << 0, 1, 0, 1, 0, 1, 0, 1, 0;
    CHECK((t - expected).cwiseAbs().maxCoeff() == 0.0);

    const auto q = compress(OperatorSpec::hermite_q(), 3).dense();
    Eigen::MatrixXcd hq(3, 3);
    hq << 0, 1, 0, 1, 0, std::sqrt(2.0), 0, std::sqrt(2.0), 0;
    hq /= std::sqrt(2.0);
    CHECK((q - hq).cwiseAbs().maxCoeff() < 1e-15);

    const auto d = OperatorSpec::diagonal(WeightFormula::linear());
    const auto zero = compress(OperatorSpec::sum({d, OperatorSpec::scale(-1.0, d)}), 5);
    CHECK(zero.nonzeros() == 0);
    CHECK(zero.dim() == 5);
  }

  TEST_CASE("projection windows") {
    CHECK(projection_window(ProjectionFamily::canonical(), 2, 3) == Window(3, {{1, 1, 1.0}, {2, 2, 1.0}}));
    CHECK(projection_window(ProjectionFamily::sparse(IndexSequence::geometric(2)), 2, 5) ==
          Window(5, {{2, 2, 1.0}, {4, 4, 1.0}}));
    const auto blocks = ProjectionFamily::blocks(BoundarySequence::list({0, 3, 5}));
    CHECK(projection_window(blocks, 2, 6) == Window(6, {{1, 1, 1.0}, {2, 2, 1.0}, {3, 3, 1.0}, {4, 4, 1.0}, {5, 5, 1.0}}));
    CHECK(blocks.rank(2) == 5);
    CHECK(ProjectionFamily::sparse(IndexSequence::geometric(2)).rank(2) == 2);
  }

  TEST_CASE("projection window too small") {
    try {
      (void)projection_window(ProjectionFamily::sparse(IndexSequence::geometric(2)), 3, 7);
      FAIL("expected WindowTooSmall");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::WindowTooSmall);
    }
  }

  TEST_CASE("projection windows are Hermitian idempotents") {
    const std::vector<ProjectionFamily> families = {
        ProjectionFamily::canonical(),
        ProjectionFamily::sparse(IndexSequence::polynomial(2)),
        ProjectionFamily::blocks(BoundarySequence::list({0, 2, 7, 9, 20})),
        ProjectionFamily::blocks(BoundarySequence::list({0, 2, 7, 9, 20}), IndexSequence::list({2, 4})),
    };
    for (const auto& fam : families) {
      for (Index n = 1; n <= 2; ++n) {
        const auto w = projection_window(fam, n, 25).dense();
        CHECK((w * w - w).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((w - w.adjoint()).cwiseAbs().maxCoeff() == 0.0);
      }
    }
  }

  TEST_CASE("huge sparse coordinates stay exact") {
    const auto fam = ProjectionFamily::sparse(IndexSequence::geometric(2));
    CHECK(fam.max_coordinate(200) == BigIndex(1) << 200);
    const auto c = capture_commutator(OperatorSpec::weighted_shift(WeightFormula::inverse()), fam, 200);
    CHECK(c.rank == 200);
    CHECK(c.capture_bound == (BigIndex(1) << 200) + 1);
  }

  TEST_CASE("commutator windows") {
    const auto w = commutator_window(OperatorSpec::weighted_shift(WeightFormula::linear()),
                                     ProjectionFamily::canonical(), 4);
    CHECK(w == Window(5, {{5, 4, 4.0}}));
    CHECK(commutator_window(OperatorSpec::diagonal(WeightFormula::sqrt()), ProjectionFamily::canonical(), 7)
              .nonzeros() == 0);

    const auto& ref = qdf::testing::frozen()["hermite_q_commutator_n3"];
    const auto q = commutator_window(OperatorSpec::hermite_q(), ProjectionFamily::canonical(), 3);
    CHECK(q.dim() == 4);
    CHECK(q.nonzeros() == 2);
    CHECK(std::abs(q(4, 3) - ref["entry_4_3"].get<double>()) < 1e-15);
    CHECK(std::abs(q(3, 4) - ref["entry_3_4"].get<double>()) < 1e-15);
  }

  TEST_CASE("property: commutator capture is complete") {
    // [P_N T P_N, P_n] = P_N [T, P_n] P_N, so a large dense window sees every
    // entry of the commutator that lies inside it.
    for (const auto& spec : builtin_specs()) {
      for (Index n : {1, 2, 5, 17, 64, 200}) {
        const auto captured = commutator_window(spec, ProjectionFamily::canonical(), n);
        const Index big = 2 * captured.dim() + 5;
        const auto t = compress(spec, big).dense();
        const auto p = projection_dense(n, big);
        const Eigen::MatrixXcd dense = t * p - p * t;
        const auto padded = captured.padded(big).dense();
        CHECK((dense - padded).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, dense.cwiseAbs().maxCoeff()));
        const auto a = seminorms(captured);
        const auto b = seminorms(Window::from_dense(dense));
        CHECK(std::abs(a.u - b.u) <= 1e-12 * std::max(1.0, b.u));
        CHECK(std::abs(a.s1 - b.s1) <= 1e-12 * std::max(1.0, b.s1));
        CHECK(std::abs(a.s2 - b.s2) <= 1e-12 * std::max(1.0, b.s2));
      }
    }
  }

  TEST_CASE("property: sparse capture matches dense commutator") {
    const auto fam = ProjectionFamily::blocks(BoundarySequence::list({0, 2, 5, 6, 11, 15, 22}), IndexSequence::list({1, 3, 4, 6}));
    for (const auto& spec : builtin_specs()) {
      for (Index n = 1; n <= 4; ++n) {
        const auto captured = commutator_window(spec, fam, n);
        const Index big = 2 * captured.dim() + 5;
        const auto t = compress(spec, big).dense();
        const auto p = projection_window(fam, n, big).dense();
        const Eigen::MatrixXcd dense = t * p - p * t;
        CHECK((dense - captured.padded(big).dense()).cwiseAbs().maxCoeff() <=
              1e-12 * std::max(1.0, dense.cwiseAbs().maxCoeff()));
      }
    }
  }

  TEST_CASE("property: adjoint weighted shift is the conjugate transpose") {
    for (const auto& w : {WeightFormula::sqrt(), WeightFormula::log(), WeightFormula::power(-0.75)}) {
      const auto s = OperatorSpec::weighted_shift(w);
      const auto sa = OperatorSpec::adjoint_weighted_shift(w);
      for (Index i = 1; i <= 100; ++i) {
        for (Index j = std::max<Index>(1, i - 2); j <= std::min<Index>(100, i + 2); ++j) {
          CHECK(entry(sa, i, j) == std::conj(entry(s, j, i)));
        }
      }
    }
  }

  TEST_CASE("property: product compression restricts to the matrix product") {
    const auto a = OperatorSpec::toeplitz({{-1, 2.0}, {1, Complex(0, 1)}});
    const auto b = OperatorSpec::hermite_p();
    const auto c = OperatorSpec::weighted_shift(WeightFormula::log());
    const Index n = 30;
    const Index d = 3;  // sum of child propagations
    const auto prod = compress(OperatorSpec::product({a, b, c}), n).dense();
    const Eigen::MatrixXcd expected = compress(a, n).dense() * compress(b, n).dense() * compress(c, n).dense();
    CHECK((prod.leftCols(n - d) - expected.leftCols(n - d)).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("explicit bases must be orthonormal") {
    Eigen::MatrixXcd good = Eigen::MatrixXcd::Zero(3, 1);
    good(0, 0) = 1.0;
    CHECK_NOTHROW((void)ProjectionFamily::explicit_bases({good}));
    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Ones(3, 1);
    CHECK_THROWS_AS((void)ProjectionFamily::explicit_bases({bad}), Error);
  }

  TEST_CASE("selectors must increase") {
    CHECK_THROWS_AS((void)IndexSequence::list({3, 3}), Error);
    CHECK_THROWS_AS((void)BoundarySequence::list({0, 4, 2}), Error);
  }

  TEST_CASE("windows reject non-finite entries") {
    try {
      Window w(2, {{1, 1, Complex(std::nan(""), 0.0)}});
      FAIL("expected NumericalFailure");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NumericalFailure);
    }
  }
}
