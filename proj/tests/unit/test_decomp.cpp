#include <cmath>
#include <vector>

#include <doctest.h>

#include "frozen.hpp"
#include "qdf/qdf.hpp"

using namespace qdf;

namespace {

std::vector<Index> upto(Index last) {
  std::vector<Index> ns;
  for (Index n = 1; n <= last; ++n) ns.push_back(n);
  return ns;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_SUITE("decomp") {
  TEST_CASE("greedy subsequence for the compact shift") {
    const auto compact = OperatorSpec::weighted_shift(WeightFormula::inverse());
    const auto picked = select_subsequence(compact, ProjectionFamily::canonical(), 0.1, 2047);
    const auto expected = qdf::testing::frozen()["halmos_inverse_boundaries"].get<std::vector<Index>>();
    CHECK(picked == expected);
    CHECK(select_subsequence(compact, ProjectionFamily::canonical(), 0.1, 100000).front() == 41);
  }

  TEST_CASE("diagonal operators admit every index") {
    CHECK(select_subsequence(OperatorSpec::diagonal(WeightFormula::linear()), ProjectionFamily::canonical(), 1e-9, 10) ==
          upto(10));
  }

  TEST_CASE("unilateral shift is not quasidiagonal along the canonical family") {
    CHECK(code_of([] {
            (void)select_subsequence(OperatorSpec::weighted_shift(WeightFormula::constant(1.0)),
                                     ProjectionFamily::canonical(), 0.5, 1000);
          }) == ErrorCode::NotQuasidiagonalAlongFamily);
  }

  TEST_CASE("halmos decomposition of a diagonal operator") {
    const auto d = OperatorSpec::diagonal(WeightFormula::sqrt());
    const auto dec = halmos_decompose(d, {2, 5, 9}, 12, 0.1);
    CHECK(dec.k.nonzeros() == 0);
    CHECK(dec.b == compress(d, 12));
    CHECK(dec.violations.empty());
  }

  TEST_CASE("halmos decomposition of the compact shift") {
    const auto compact = OperatorSpec::weighted_shift(WeightFormula::inverse());
    const auto boundaries = select_subsequence(compact, ProjectionFamily::canonical(), 0.1, 2047);
    const auto dec = halmos_decompose(compact, boundaries, 2048, 0.1);
    CHECK(dec.k_norm < 0.1);
    CHECK(std::abs(dec.k_norm - qdf::testing::frozen()["halmos_inverse_k_norm"].get<double>()) < 1e-15);
    CHECK(dec.off_block_residual < 1e-12);
    CHECK(dec.reconstruction_residual <= 1e-14);
    CHECK(max_abs_difference(dec.b + dec.k, compress(compact, 2048)) <= 1e-14);
    CHECK(dec.violations.empty());

    // proof estimate: ||K||_u <= sum_i 2 ||[T, P_{b_i}]||_u
    double bound = 0.0;
    for (Index b : boundaries) bound += 2.0 * norm_report(compact, ProjectionFamily::canonical(), b).u;
    CHECK(dec.k_norm <= bound + 1e-15);
  }

  TEST_CASE("halmos decomposition reports violations") {
    const auto dec = halmos_decompose(OperatorSpec::hermite_q(), upto(20), 21, 0.5);
    CHECK_FALSE(dec.violations.empty());
    CHECK(dec.k_norm > 1.0);
    CHECK(dec.reconstruction_residual <= 1e-14);
    const auto bigger = halmos_decompose(OperatorSpec::hermite_q(), upto(40), 41, 0.5);
    CHECK(bigger.k_norm > dec.k_norm);
  }

  TEST_CASE("halmos window must contain the captured blocks") {
    CHECK(code_of([] {
            (void)halmos_decompose(OperatorSpec::hermite_q(), {3, 6}, 6, 0.5);
          }) == ErrorCode::WindowTooSmall);
  }

  TEST_CASE("sparse families over blocks") {
    const auto unit = sparse_family(BoundarySequence::unit(), IndexSequence::geometric(2));
    CHECK(projection_window(unit, 3, 9) == Window(9, {{2, 2, 1.0}, {4, 4, 1.0}, {8, 8, 1.0}}));

    const auto fam = sparse_family(std::vector<Index>{0, 3, 5, 9}, IndexSequence::list({1, 3}));
    const auto coords = fam.coordinates(2);
    REQUIRE(coords.size() == 2);
    CHECK(coords[0].lo == 1);
    CHECK(coords[0].hi == 3);
    CHECK(coords[1].lo == 6);
    CHECK(coords[1].hi == 9);
    CHECK(fam.rank(2) == 7);
  }

  TEST_CASE("sparse family rejects bad selectors") {
    CHECK(code_of([] {
            (void)sparse_family(std::vector<Index>{0, 3, 5, 9}, IndexSequence::list({2, 1}));
          }) == ErrorCode::SelectorOutOfRange);
    CHECK(code_of([] {
            (void)sparse_family(std::vector<Index>{0, 3, 5, 9}, IndexSequence::list({1, 4}));
          }) == ErrorCode::SelectorOutOfRange);
    const auto open = sparse_family(BoundarySequence::list({0, 3, 5, 9}), IndexSequence::geometric(2));
    CHECK(open.rank(1) == 2);
    CHECK(code_of([&] { (void)open.rank(2); }) == ErrorCode::SelectorOutOfRange);
  }

  TEST_CASE("property: sparse Foelner sequences for the compact shift") {
    const auto compact = OperatorSpec::weighted_shift(WeightFormula::inverse());
    const auto& ref = qdf::testing::frozen();
    for (const auto& [selector, key] : {std::pair{IndexSequence::geometric(2), "sparse_geometric_ratio2"},
                                        std::pair{IndexSequence::polynomial(2), "sparse_square_ratio2"}}) {
      const auto fam = sparse_family(BoundarySequence::unit(), selector);
      std::vector<Index> ns;
      for (Index n = 1024; n <= 24576; n += 1024) ns.push_back(n);
      const auto rows = report_sequence(compact, fam, ns);
      std::vector<double> ratios;
      for (const auto& r : rows) ratios.push_back(r.ratio2);
      CHECK(classify(ratios).kind == VerdictKind::tends_to_zero);
      CHECK(std::abs(rows.front().ratio2 - ref[key]["1024"].get<double>()) < 1e-12);
      CHECK(std::abs(rows.back().ratio2 - ref[key]["24576"].get<double>()) < 1e-12);
    }
  }

  TEST_CASE("property: quasidiagonal implies sparse Foelner along Halmos blocks") {
    const auto compact = OperatorSpec::weighted_shift(WeightFormula::inverse());
    const auto blocks = select_subsequence(compact, ProjectionFamily::canonical(), 1.0, 1 << 17);
    REQUIRE(blocks.size() >= 8);
    const auto fam = sparse_family(blocks, IndexSequence::affine(1, 0));
    std::vector<double> ratios;
    for (const auto& r : report_sequence(compact, fam, upto(static_cast<Index>(blocks.size()))))
      ratios.push_back(r.ratio2);
    CHECK(classify(ratios).kind == VerdictKind::tends_to_zero);

    const auto a = OperatorSpec::example_a();
    const auto a_blocks = select_subsequence(a, ProjectionFamily::canonical(), 0.5, 4000);
    const auto a_fam = sparse_family(a_blocks, IndexSequence::polynomial(2));
    std::vector<double> a_ratios;
    for (const auto& r : report_sequence(a, a_fam, upto(40))) a_ratios.push_back(r.ratio2);
    CHECK(classify(a_ratios).kind == VerdictKind::tends_to_zero);
  }

  TEST_CASE("property: example A asymmetry") {
    const auto a = OperatorSpec::example_a();
    for (Index j = 1; j <= 100; ++j) {
      CHECK(std::abs(norm_report(a, ProjectionFamily::canonical(), 2 * j - 1).u - 1.0 / static_cast<double>(2 * j - 1)) <
            1e-15);
      CHECK(norm_report(a, ProjectionFamily::canonical(), 2 * j).u == 0.0);
    }
    const auto a2 = OperatorSpec::product({a, a});
    std::vector<Index> odd;
    for (Index n = 4; n <= (Index{1} << 24); n *= 4) odd.push_back(n + 1);
    std::vector<double> u;
    for (const auto& r : report_sequence(a2, ProjectionFamily::canonical(), odd)) u.push_back(r.u);
    CHECK(classify(u).kind == VerdictKind::diverges);
  }
}
