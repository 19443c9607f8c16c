#include <gtest/gtest.h>

#include <random>

#include "truncop/truncop.hpp"

namespace {

using namespace truncop;

const cplx I1(0.0, 1.0);

Matrix mat(std::initializer_list<std::initializer_list<cplx>> rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index k = 0;
    for (cplx v : r) m(i, k++) = v;
    ++i;
  }
  return m;
}

Vector vec(std::initializer_list<cplx> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (cplx x : xs) v(i++) = x;
  return v;
}

void expect_near(cplx a, cplx b, double tol = 1e-12) { EXPECT_LT(std::abs(a - b), tol) << a << " vs " << b; }
void expect_matrix(const Matrix& a, const Matrix& b, double tol = 1e-12) {
  ASSERT_EQ(a.rows(), b.rows());
  ASSERT_EQ(a.cols(), b.cols());
  EXPECT_LT((a - b).norm(), tol) << "\n" << a << "\nvs\n" << b;
}

SpacePtr z_space(std::size_t n) { return ModelSpace::make(monomial_inner(n)); }

InnerFunction random_inner(Rng& g, int degree, bool real_symmetric = false) { return sample::blaschke(g, degree, real_symmetric); }

/// Exact Fourier coefficient of a Laurent polynomial given as a map.
cplx coeff(const std::map<int, cplx>& terms, int k) {
  const auto it = terms.find(k);
  return it == terms.end() ? cplx(0.0, 0.0) : it->second;
}

// ---------------------------------------------------------------------------
// Blaschke products

TEST(Blaschke, MonomialFromZeroZeros) {
  const InnerFunction u = blaschke_new({0.0, 0.0}, 1.0);
  expect_near(u(0.5), 0.25);
  expect_near(evaluate(u, 2.0), 4.0);
  EXPECT_EQ(u.degree(), 2u);
}

TEST(Blaschke, SingleZeroVanishesAndIsUnimodular) {
  const InnerFunction u = blaschke_new({0.5}, 1.0);
  expect_near(u(0.5), 0.0);
  EXPECT_NEAR(std::abs(u(I1)), 1.0, 1e-12);
  expect_near(u(0.0), -0.5);
}

TEST(Blaschke, UnimodularOnCircleAtSixteenAngles) {
  const InnerFunction u = blaschke_new({cplx(0.3, 0.4)}, -1.0);
  for (int k = 0; k < 16; ++k) EXPECT_NEAR(std::abs(u(std::polar(1.0, 2.0 * kPi * k / 16.0))), 1.0, 1e-10);
}

TEST(Blaschke, RandomProductsAreUnimodularOnCircle) {
  Rng g(11);
  for (int t = 0; t < 50; ++t) {
    const InnerFunction u = random_inner(g, sample::integer(g, 1, 8));
    for (int k = 0; k < 8; ++k) EXPECT_NEAR(std::abs(u(sample::unimodular(g))), 1.0, 1e-10);
  }
}

TEST(Blaschke, RejectsBadZerosAndConstants) {
  try {
    blaschke_new({1.0}, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroOnOrOutsideCircle);
  }
  try {
    blaschke_new({0.2}, 2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotUnimodular);
  }
}

TEST(Blaschke, DerivativeExamples) {
  expect_near(derivative_at(monomial_inner(2), 1.0), 2.0);
  expect_near(derivative_at(blaschke_new({0.5}), 0.0), 0.75);
  const InnerFunction u = monomial_inner(2);
  const double h = 1e-5;
  const cplx fd = (u(0.3 + h) - u(0.3 - h)) / (2.0 * h);
  expect_near(derivative_at(u, 0.3), fd, 1e-6);
}

TEST(Blaschke, DerivativeMatchesCentralDifferenceOnRandomProducts) {
  Rng g(12);
  for (int t = 0; t < 20; ++t) {
    const InnerFunction u = random_inner(g, 4);
    const cplx z = sample::disk_point(g, 0.7);
    const double h = 1e-6;
    const cplx fd = (u(z + h) - u(z - h)) / (2.0 * h);
    expect_near(derivative_at(u, z), fd, 1e-5);
  }
}

TEST(Blaschke, HatConjugatesZerosAndConstant) {
  EXPECT_TRUE(same_function(hat(monomial_inner(2)), monomial_inner(2)));
  const InnerFunction u = blaschke_new({cplx(0.0, 0.5)});
  const InnerFunction uh = hat(u);
  ASSERT_EQ(uh.zeros().size(), 1u);
  expect_near(uh.zeros()[0], cplx(0.0, -0.5));
  for (int k = 0; k < 8; ++k) {
    const cplx z = std::polar(0.6, 0.7 * k);
    expect_near(std::conj(uh(std::conj(z))), u(z));
  }
  expect_near(hat(blaschke_new({0.2}, I1)).constant(), -I1);
}

TEST(Blaschke, RealSymmetry) {
  EXPECT_TRUE(is_real_symmetric(monomial_inner(3)));
  EXPECT_FALSE(is_real_symmetric(blaschke_new({cplx(0.0, 0.5)})));
  EXPECT_TRUE(is_real_symmetric(blaschke_new({cplx(0.0, 0.5), cplx(0.0, -0.5)}, -1.0)));
}

// ---------------------------------------------------------------------------
// Clark points

TEST(Clark, SquareAtOne) {
  const ClarkData d = clark_points(monomial_inner(2), 1.0);
  ASSERT_EQ(d.points.size(), 2u);
  std::vector<double> re;
  for (cplx z : d.points) re.push_back(z.real());
  std::sort(re.begin(), re.end());
  EXPECT_NEAR(re[0], -1.0, 1e-10);
  EXPECT_NEAR(re[1], 1.0, 1e-10);
  for (double w : d.weights) EXPECT_NEAR(w, 0.5, 1e-10);
  EXPECT_NEAR(clark_quadrature_defect(d, k0(z_space(2))), 0.0, 1e-12);
}

TEST(Clark, MonomialPointsAreRootsWithEqualWeights) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const ClarkData d = clark_points(monomial_inner(n), 1.0);
    const cplx first = std::pow(d.points[0], static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
      expect_near(std::pow(d.points[j], static_cast<double>(n)), first, 1e-9);
      EXPECT_NEAR(d.weights[j], 1.0 / static_cast<double>(n), 1e-10);
    }
  }
}

TEST(Clark, PointsSatisfyOrientationAndQuadrature) {
  Rng g(13);
  for (int t = 0; t < 20; ++t) {
    const InnerFunction u = random_inner(g, sample::integer(g, 1, 6));
    const SpacePtr k = ModelSpace::make(u);
    const cplx alpha = sample::unimodular(g);
    const ClarkData d = clark_points(k, alpha);
    for (std::size_t j = 0; j < d.points.size(); ++j) {
      expect_near(u(d.points[j]), alpha, 1e-8);
      EXPECT_NEAR(d.weights[j], 1.0 / std::abs(derivative_at(u, d.points[j])), 1e-8);
    }
    const SpaceElement f = project(k, sample::laurent(g, 3));
    double sum = 0.0;
    for (std::size_t j = 0; j < d.points.size(); ++j) sum += d.weights[j] * std::norm(f(d.points[j]));
    EXPECT_NEAR(sum, f.coords.squaredNorm(), 1e-8);
  }
}

// ---------------------------------------------------------------------------
// Rational symbols and the flip

TEST(Rational, FlipMonomials) {
  auto check = [](const RationalSymbol& a, const RationalSymbol& b) {
    for (int k = 0; k < 6; ++k) {
      const cplx z = std::polar(1.0, 0.9 * k + 0.1);
      expect_near(a(z), b(z));
    }
  };
  check(flip_J(RationalSymbol::constant(1.0)), RationalSymbol::monomial(-1));
  check(flip_J(RationalSymbol::monomial(3)), RationalSymbol::monomial(-4));
  check(flip_J(RationalSymbol::monomial(-2)), RationalSymbol::monomial(1));
}

TEST(Rational, ConjugationOnCircleMatchesPointwiseConjugate) {
  Rng g(14);
  const RationalSymbol f = sample::laurent(g, 3) / (RationalSymbol::z() - cplx(0.3, 0.2));
  for (int k = 0; k < 8; ++k) {
    const cplx z = std::polar(1.0, 0.77 * k);
    expect_near(f.conj_on_circle()(z), std::conj(f(z)), 1e-12);
  }
}

// ---------------------------------------------------------------------------
// Model spaces and kernels

TEST(ModelSpace, MonomialBasis) {
  const SpacePtr k = z_space(3);
  for (int j = 0; j < 3; ++j)
    for (cplx z : {cplx(0.3, 0.1), cplx(-0.5, 0.2)}) expect_near(k->basis()[j](z), std::pow(z, j));
}

TEST(ModelSpace, SingleZeroBasis) {
  const SpacePtr k = ModelSpace::make(blaschke_new({0.5}));
  const RationalSymbol e = k->basis()[0];
  for (cplx z : {cplx(0.1, 0.0), cplx(0.2, -0.4)}) expect_near(e(z), std::sqrt(0.75) / (1.0 - 0.5 * z));
  EXPECT_NEAR(l2_norm(e), 1.0, 1e-12);
}

TEST(ModelSpace, RandomBasisIsOrthonormalUnderQuadrature) {
  Rng g(15);
  const SpacePtr k = ModelSpace::make(random_inner(g, 5));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) expect_near(inner_product(k->basis()[i], k->basis()[j]), i == j ? 1.0 : 0.0, 1e-10);
}

TEST(ModelSpace, InnerProductExamples) {
  const RationalSymbol z = RationalSymbol::z();
  expect_near(inner_product(z, z), 1.0);
  expect_near(inner_product(RationalSymbol::monomial(2), RationalSymbol::monomial(3)), 0.0);
  expect_near(inner_product(RationalSymbol::constant(1.0) / (1.0 - 0.5 * z), RationalSymbol::constant(1.0)), 1.0);
}

TEST(ModelSpace, KernelExamples) {
  const SpacePtr k = z_space(2);
  EXPECT_LT((kernel(k, 0.0).coords - vec({1.0, 0.0})).norm(), 1e-12);
  EXPECT_LT((kernel(k, 0.5).coords - vec({1.0, 0.5})).norm(), 1e-12);
  EXPECT_LT((conj_kernel(k, 0.0).coords - vec({0.0, 1.0})).norm(), 1e-12);
  EXPECT_LT((conj_kernel(k, 0.5).coords - vec({0.5, 1.0})).norm(), 1e-12);
  EXPECT_LT((boundary_kernel(k, 1.0).coords - vec({1.0, 1.0})).norm(), 1e-12);
  EXPECT_NEAR(boundary_kernel(k, 1.0).coords.squaredNorm(), std::abs(derivative_at(monomial_inner(2), 1.0)), 1e-12);
}

TEST(ModelSpace, KernelPropertiesOnRandomInstances) {
  Rng g(16);
  for (int t = 0; t < 30; ++t) {
    const InnerFunction u = random_inner(g, sample::integer(g, 1, 8));
    const SpacePtr k = ModelSpace::make(u);
    const cplx lambda = sample::disk_point(g, 0.85);
    const cplx eta = sample::unimodular(g);
    const SpaceElement f = project(k, sample::laurent(g, 3));
    expect_near(inner_product(f.symbol(), kernel(k, lambda).symbol()), f(lambda), 1e-9);
    const OperatorMatrix c = conjugation_C_op(k);
    EXPECT_LT((c.apply(kernel(k, lambda)).coords - conj_kernel(k, lambda).coords).norm(), 1e-10);
    const SpaceElement kb = boundary_kernel(k, eta);
    EXPECT_LT((kb.coords - std::conj(u(eta)) * eta * c.apply(kb).coords).norm(), 1e-9);
    EXPECT_NEAR(kb.coords.squaredNorm(), std::abs(derivative_at(u, eta)), 1e-8);
  }
}

TEST(ModelSpace, ProjectionExamples) {
  const SpacePtr k = z_space(2);
  EXPECT_LT(project(k, RationalSymbol::monomial(3)).coords.norm(), 1e-12);
  EXPECT_LT(project(k, RationalSymbol::monomial(-1)).coords.norm(), 1e-12);
  EXPECT_LT((project(k, RationalSymbol::laurent({{0, 1.0}, {1, 1.0}, {2, 1.0}})).coords - vec({1.0, 1.0})).norm(), 1e-12);
}

TEST(ModelSpace, ConjugationCOnSquare) {
  const SpacePtr k = z_space(2);
  const cplx a(0.3, -0.7), b(-1.1, 0.4);
  const SpaceElement f{k, vec({a, b})};
  const SpaceElement cf = conjugation_C_op(k).apply(f);
  EXPECT_LT((cf.coords - vec({std::conj(b), std::conj(a)})).norm(), 1e-12);
}

TEST(ModelSpace, ConjugationCIsAnInvolution) {
  Rng g(17);
  for (int t = 0; t < 10; ++t) {
    const SpacePtr k = ModelSpace::make(random_inner(g, 5));
    const OperatorMatrix c = conjugation_C_op(k);
    const SpaceElement f = project(k, sample::laurent(g, 2));
    EXPECT_LT((c.apply(c.apply(f)).coords - f.coords).norm(), 1e-10);
  }
}

TEST(ModelSpace, ConjugationUExamples) {
  const SpacePtr k = z_space(2);
  const SpaceElement f{k, vec({0.0, I1})};
  const OperatorMatrix uop = conjugation_U_op(k, hat_space(k));
  EXPECT_LT((uop.apply(f).coords - vec({0.0, -I1})).norm(), 1e-12);
  EXPECT_LT((uop.apply(kernel(k, 0.5 * I1)).coords - kernel(hat_space(k), -0.5 * I1).coords).norm(), 1e-12);
  Rng g(18);
  for (int t = 0; t < 10; ++t) {
    const SpacePtr ku = ModelSpace::make(random_inner(g, 4));
    const SpacePtr kh = hat_space(ku);
    const cplx lambda = sample::disk_point(g, 0.8);
    const OperatorMatrix up = conjugation_U_op(ku, kh);
    EXPECT_LT((up.apply(conj_kernel(ku, lambda)).coords - conj_kernel(kh, std::conj(lambda)).coords).norm(), 1e-10);
  }
}

// ---------------------------------------------------------------------------
// Operators

TEST(Operators, ShiftOnSquare) {
  const SpacePtr k = z_space(2);
  expect_matrix(shift(k).matrix(), mat({{0.0, 0.0}, {1.0, 0.0}}));
  EXPECT_LT((shift_adj(k).apply({k, vec({0.0, 1.0})}).coords - vec({1.0, 0.0})).norm(), 1e-12);
  Rng g(19);
  const SpacePtr kr = ModelSpace::make(random_inner(g, 5));
  expect_matrix(shift_adj(kr).matrix(), shift(kr).matrix().adjoint());
}

TEST(Operators, Defects) {
  const SpacePtr k = z_space(2);
  const auto [left, right] = defects(k);
  expect_matrix(left.matrix(), mat({{1.0, 0.0}, {0.0, 0.0}}));
  expect_matrix(right.matrix(), mat({{0.0, 0.0}, {0.0, 1.0}}));
  Rng g(20);
  for (int t = 0; t < 10; ++t) {
    const SpacePtr kr = ModelSpace::make(random_inner(g, sample::integer(g, 1, 7)));
    const OperatorMatrix s = shift(kr), id = identity(kr);
    EXPECT_LT(distance(id - s * s.adjoint(), rank_one(k0(kr), k0(kr))), 1e-10);
    EXPECT_LT(distance(id - s.adjoint() * s, rank_one(k0_tilde(kr), k0_tilde(kr))), 1e-10);
  }
}

TEST(Operators, RankOne) {
  const SpacePtr k = z_space(3);
  const SpaceElement e0{k, vec({1.0, 0.0, 0.0})};
  expect_matrix(rank_one(e0, e0).matrix(), mat({{1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}}));
  const SpaceElement f{k, vec({1.0, I1, 2.0})}, g{k, vec({0.0, 1.0, 0.0})}, h{k, vec({3.0, 0.0, -I1})};
  EXPECT_LT(rank_one(f, g).apply(h).coords.norm(), 1e-12);
  expect_near(rank_one(f, h).matrix().trace(), h.coords.dot(f.coords));
}

TEST(Operators, ClarkPerturbation) {
  const SpacePtr k = z_space(2);
  expect_matrix(clark_perturbation(k, 0.0).matrix(), shift(k).matrix());
  const OperatorMatrix s1 = clark_perturbation(k, 1.0);
  expect_matrix(s1.matrix(), mat({{0.0, 1.0}, {1.0, 0.0}}));
  expect_matrix((s1.adjoint() * s1).matrix(), Matrix::Identity(2, 2));
  Rng g(21);
  for (int t = 0; t < 10; ++t) {
    const SpacePtr kr = ModelSpace::make(random_inner(g, 5));
    Eigen::ComplexEigenSolver<Matrix> es(clark_perturbation(kr, sample::unimodular(g)).matrix());
    for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j) EXPECT_NEAR(std::abs(es.eigenvalues()(j)), 1.0, 1e-10);
  }
}

TEST(Operators, ToeplitzExamples) {
  const SpacePtr k = z_space(2);
  expect_matrix(tto_matrix(k, k, RationalSymbol::z()).matrix(), mat({{0.0, 0.0}, {1.0, 0.0}}));
  expect_matrix(tto_matrix(k, k, RationalSymbol::constant(1.0)).matrix(), Matrix::Identity(2, 2));
  expect_matrix(tto_matrix(k, k, RationalSymbol::monomial(-1)).matrix(), mat({{0.0, 1.0}, {0.0, 0.0}}));
}

TEST(Operators, HankelExamples) {
  const SpacePtr k = z_space(2);
  expect_matrix(tho_matrix(k, k, RationalSymbol::monomial(-1)).matrix(), mat({{1.0, 0.0}, {0.0, 0.0}}));
  expect_matrix(tho_matrix(k, k, RationalSymbol::monomial(-2)).matrix(), mat({{0.0, 1.0}, {1.0, 0.0}}));
  expect_matrix(tho_matrix(k, k, RationalSymbol::monomial(-3)).matrix(), mat({{0.0, 0.0}, {0.0, 1.0}}));
  Rng g(22);
  const SpacePtr ku = ModelSpace::make(random_inner(g, 3));
  const SpacePtr kv = ModelSpace::make(random_inner(g, 4));
  EXPECT_LT(tho_matrix(ku, kv, sample::polynomial(g, 4)).norm(), 1e-12);
}

TEST(Operators, MonomialSpacesMatchExactCoefficientOracle) {
  Rng g(23);
  for (std::size_t n = 1; n <= 8; ++n) {
    const SpacePtr k = z_space(n);
    std::map<int, cplx> terms;
    for (int j = -12; j <= 12; ++j) terms[j] = sample::box(g);
    const RationalSymbol phi = RationalSymbol::laurent(terms);
    const Matrix t = tto_matrix(k, k, phi).matrix();
    const Matrix h = tho_matrix(k, k, phi).matrix();
    for (Eigen::Index i = 0; i < t.rows(); ++i)
      for (Eigen::Index j = 0; j < t.cols(); ++j) {
        EXPECT_LT(std::abs(t(i, j) - coeff(terms, static_cast<int>(i - j))), 1e-11);
        EXPECT_LT(std::abs(h(i, j) - coeff(terms, static_cast<int>(-i - j - 1))), 1e-11);
      }
  }
}

TEST(Operators, HankelAdjoint) {
  const SpacePtr k2 = z_space(2), k3 = z_space(3);
  const OperatorMatrix b = tho_matrix(k2, k2, RationalSymbol::monomial(-1));
  expect_matrix(b.adjoint().matrix(), b.matrix());
  EXPECT_TRUE(adjoint_tho_check(k2, k3, RationalSymbol::monomial(-2)));
  EXPECT_TRUE(adjoint_tho_check(k2, k3, RationalSymbol::constant(0.0)));
  EXPECT_LT(tho_matrix(k2, k3, RationalSymbol::constant(0.0)).norm(), 1e-14);
}

TEST(Operators, SedlockExamples) {
  const SpacePtr k = z_space(2);
  expect_matrix(sedlock_op(k0_tilde(k), 0.0).matrix(), shift(k).matrix());
  expect_matrix(sedlock_op({k, vec({0.0, 1.0})}, ExtendedScalar::infinity()).matrix(), shift(k).adjoint().matrix());
  const cplx c(0.4, -1.2);
  expect_matrix(sedlock_op(zero_element(k), 0.3, c).matrix(), c * Matrix::Identity(2, 2));
}

TEST(Operators, FunctionalCalculusExamples) {
  const SpacePtr k2 = z_space(2), k3 = z_space(3);
  expect_matrix(functional_calculus(k2, 0.0, RationalSymbol::z()).matrix(), shift(k2).matrix());
  const Matrix s = shift(k3).matrix();
  expect_matrix(functional_calculus(k3, 0.0, RationalSymbol::monomial(2)).matrix(), s * s, 1e-10);
  expect_matrix(functional_calculus(k3, std::polar(1.0, 0.4), RationalSymbol::constant(1.0)).matrix(), Matrix::Identity(3, 3),
                1e-10);
}

TEST(Operators, InvolutionD) {
  const SpacePtr k = z_space(2);
  const OperatorMatrix d = dee(k);
  expect_matrix((d * d).matrix(), Matrix::Identity(2, 2));
  expect_matrix(d.matrix(), tho_matrix(k, k, RationalSymbol::monomial(-2)).matrix());
  Rng g(24);
  for (int t = 0; t < 10; ++t) {
    const SpacePtr kr = ModelSpace::make(random_inner(g, sample::integer(g, 1, 6), true));
    const OperatorMatrix dr = dee(kr);
    EXPECT_LT(distance(dr.adjoint(), dr), 1e-10);
    EXPECT_LT(distance(dr * dr, identity(kr)), 1e-10);
  }
}

// ---------------------------------------------------------------------------
// Classification

TEST(Classify, CrossDecomposition) {
  Rng g(25);
  const SpacePtr ku = ModelSpace::make(random_inner(g, 4));
  const SpacePtr kv = ModelSpace::make(random_inner(g, 3));
  const SpaceElement a = k0(ku), b = k0(kv);
  const SpaceElement phi = project(kv, sample::laurent(g, 2));
  const SpaceElement psi = project(ku, sample::laurent(g, 2));
  const OperatorMatrix m = rank_one(phi, a) + rank_one(b, psi);
  const CrossDecomposition d = cross_decompose(m, a, b);
  EXPECT_TRUE(d.success);
  EXPECT_LT(distance(rank_one(d.left, a) + rank_one(b, d.right), m), 1e-10);

  Matrix r = Matrix::Zero(kv->size(), ku->size());
  for (int j = 0; j < 3; ++j) {
    Vector x(kv->size()), y(ku->size());
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = sample::box(g);
    for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = sample::box(g);
    r += x * y.adjoint();
  }
  EXPECT_FALSE(cross_decompose(OperatorMatrix(ku, kv, r), a, b).success);

  const CrossDecomposition z = cross_decompose(zero_operator(ku, kv), a, b);
  EXPECT_TRUE(z.success);
  EXPECT_LT(z.left.coords.norm() + z.right.coords.norm(), 1e-14);
}

TEST(Classify, ToeplitzRoundTrip) {
  Rng g(26);
  for (int t = 0; t < 20; ++t) {
    const SpacePtr ku = ModelSpace::make(random_inner(g, sample::integer(g, 1, 6)));
    const SpacePtr kv = ModelSpace::make(random_inner(g, sample::integer(g, 1, 6)));
    const OperatorMatrix a = tto_matrix(ku, kv, sample::laurent(g, 3));
    const TtoMembership m = is_tto(a);
    EXPECT_TRUE(m.member);
    EXPECT_LT(m.displacement_residual, 1e-9);
    EXPECT_LT(distance(tto_matrix(ku, kv, tto_symbol(m)), a), 1e-8);
  }
  EXPECT_TRUE(is_tto(identity(z_space(3))).member);
}

TEST(Classify, NonToeplitzPerturbationIsRejected) {
  Rng g(27);
  const SpacePtr k = ModelSpace::make(random_inner(g, 4));
  Matrix m = tto_matrix(k, k, sample::laurent(g, 2)).matrix();
  m(1, 2) += 0.3;
  EXPECT_FALSE(is_tto(OperatorMatrix(k, k, m)).member);
}

TEST(Classify, HankelRoundTrip) {
  Rng g(28);
  for (int t = 0; t < 20; ++t) {
    const SpacePtr ku = ModelSpace::make(random_inner(g, sample::integer(g, 1, 6)));
    const SpacePtr kv = ModelSpace::make(random_inner(g, sample::integer(g, 1, 6)));
    const OperatorMatrix b = tho_matrix(ku, kv, sample::laurent(g, 3));
    const ThoMembership m = is_tho(b);
    EXPECT_TRUE(m.member);
    EXPECT_LT(distance(tho_matrix(ku, kv, tho_symbol(m)), b), 1e-8);
  }
  EXPECT_FALSE(is_tho(shift(z_space(3))).member);
  const ThoMembership z = is_tho(zero_operator(z_space(3), z_space(3)));
  EXPECT_TRUE(z.member);
  EXPECT_LT(z.psi.coords.norm(), 1e-14);
}

TEST(Classify, ZeroSymbols) {
  Rng g(29);
  const SpacePtr ku = ModelSpace::make(random_inner(g, 3));
  const SpacePtr kv = ModelSpace::make(random_inner(g, 2));
  const RationalSymbol z = RationalSymbol::z();
  const RationalSymbol phi = kv->generator().symbol() * z + (ku->generator().symbol() * z * z).conj_on_circle();
  EXPECT_TRUE(symbol_is_zero_tto(ku, kv, phi));
  EXPECT_TRUE(symbol_is_zero_tho(ku, kv, RationalSymbol::monomial(3)));
  EXPECT_FALSE(symbol_is_zero_tho(z_space(2), z_space(2), RationalSymbol::monomial(-1)));
}

TEST(Classify, SedlockClassExamples) {
  const SpacePtr k = z_space(2);
  const SedlockReport s = sedlock_class(shift(k));
  EXPECT_EQ(s.membership, Membership::Finite);
  expect_near(s.alpha.value(), 0.0, 1e-10);
  const cplx lambda = 0.3;
  const SedlockReport r = sedlock_class(rank_one(conj_kernel(k, lambda), kernel(k, lambda)));
  EXPECT_TRUE(r.contains(cplx(0.09, 0.0), 1e-8));
  Rng g(30);
  for (int t = 0; t < 20; ++t) {
    const SpacePtr kr = ModelSpace::make(random_inner(g, sample::integer(g, 2, 6)));
    const cplx alpha = sample::disk_point(g, 0.9);
    const SedlockReport rr = sedlock_class(sedlock_op(project(kr, sample::laurent(g, 3)), alpha, sample::box(g)));
    ASSERT_EQ(rr.membership, Membership::Finite);
    expect_near(rr.alpha.value(), alpha, 1e-8);
  }
}

TEST(Classify, UnitaryReportOnInvolution) {
  const SpacePtr k = z_space(2);
  const UnitaryReport r = tho_unitary_report(dee(k));
  for (bool c : r.conditions) EXPECT_TRUE(c);
  for (cplx v : r.clark_values) EXPECT_NEAR(std::abs(v), 1.0, 1e-10);
}

// A scaled involution fails isometry, yet B*B - I and BB* - I are scalar, hence Toeplitz.
TEST(Classify, UnitaryReportOnScaledInvolution) {
  const SpacePtr k = z_space(2);
  const UnitaryReport r = tho_unitary_report(0.5 * dee(k));
  EXPECT_FALSE(r.conditions[0]);
  EXPECT_FALSE(r.conditions[1]);
  EXPECT_FALSE(r.conditions[2]);
  EXPECT_TRUE(r.conditions[3]);
  EXPECT_TRUE(r.conditions[4]);
  EXPECT_FALSE(r.conditions[5]);
  EXPECT_FALSE(r.agree);
}

TEST(Classify, UnitaryReportOnForwardConstruction) {
  Rng g(31);
  for (int t = 0; t < 10; ++t) {
    const SpacePtr k = ModelSpace::make(random_inner(g, sample::integer(g, 1, 5), true));
    const cplx alpha = sample::unimodular(g);
    const ClarkData clark = clark_points(k, alpha);
    std::vector<cplx> values;
    for (std::size_t j = 0; j < clark.points.size(); ++j) values.push_back(sample::unimodular(g));
    const UnitaryReport r = tho_unitary_report(dee(k) * spectral_operator(k, clark, values));
    for (bool c : r.conditions) EXPECT_TRUE(c);
  }
}

TEST(Classify, InverseOfInvolution) {
  const SpacePtr k = z_space(2);
  const InverseClassReport r = tho_inverse_class(dee(k));
  EXPECT_TRUE(r.inverse_is_tho);
  EXPECT_TRUE(r.chain_holds);
}

TEST(Classify, InverseOfForwardConstructionIsHankel) {
  Rng g(32);
  for (int t = 0; t < 10; ++t) {
    const SpacePtr k = ModelSpace::make(random_inner(g, sample::integer(g, 2, 5), true));
    const cplx alpha = sample::disk_point(g, 0.9);
    const RationalSymbol psi = RationalSymbol::laurent({{0, 2.0}, {1, sample::disk_point(g, 1.0)}});
    const InverseClassReport r = tho_inverse_class(dee(k) * functional_calculus(k, alpha, psi));
    EXPECT_TRUE(r.inverse_is_tho);
    EXPECT_TRUE(r.chain_holds);
    ASSERT_TRUE(r.klass.in_class());
    EXPECT_TRUE(r.inverse_klass.contains(r.klass.alpha.reciprocal()));
  }
}

TEST(Classify, InverseOfPerturbedInvolutionIsNotHankel) {
  Rng g(33);
  int rejected = 0;
  for (int t = 0; t < 10; ++t) {
    const SpacePtr k = ModelSpace::make(random_inner(g, sample::integer(g, 3, 5), true));
    const cplx lambda = sample::disk_point(g, 0.8);
    const OperatorMatrix x = tho_matrix(k, k, sample::laurent(g, 3)) + rank_one(kernel(k, std::conj(lambda)), kernel(k, lambda));
    const InverseClassReport r = tho_inverse_class(dee(k) + (0.3 / x.norm()) * x);
    if (!r.inverse_is_tho) ++rejected;
    EXPECT_EQ(r.inverse_is_tho, r.chain_holds);
  }
  EXPECT_GE(rejected, 8);
}

TEST(Classify, ZeroProducts) {
  Rng g(34);
  const SpacePtr k = ModelSpace::make(random_inner(g, 4, true));
  const ZeroProductPair p = construct_zero_product(k, sample::unimodular(g), {true, false, true, false}, {1.0, 2.0});
  EXPECT_LT((p.b1 * p.b2).norm(), 1e-9);
  EXPECT_TRUE(zero_product_analysis(p.b1, p.b2).agree);
  const ZeroProductReport trivial = zero_product_analysis(dee(k), zero_operator(k, k));
  EXPECT_TRUE(trivial.product_is_zero);
  EXPECT_TRUE(trivial.condition_holds);
  const OperatorMatrix d = dee(k);
  const OperatorMatrix b1 = d * sedlock_op(project(k, sample::laurent(g, 2)), 0.2);
  const OperatorMatrix b2 = sedlock_op(project(k, sample::laurent(g, 2)), -0.6) * d;
  const ZeroProductReport cross = zero_product_analysis(b1, b2);
  EXPECT_GT(cross.product_norm, 1e-3);
  EXPECT_FALSE(cross.condition_holds);
}

// ---------------------------------------------------------------------------
// JSON and instances

TEST(Io, InnerFunctionRoundTrip) {
  const InnerFunction u = blaschke_new({cplx(0.3, -0.2), 0.5}, I1);
  EXPECT_TRUE(same_function(inner_from_json(to_json(u)), u));
  EXPECT_TRUE(same_function(inner_from_text("z3"), monomial_inner(3)));
  EXPECT_TRUE(same_function(inner_from_text(R"({"zeros":[[0,0],[0,0]],"constant":[1,0]})"), monomial_inner(2)));
  EXPECT_THROW(inner_from_text("{not json"), Error);
}

TEST(Io, SymbolForms) {
  const RationalSymbol a = symbol_from_text(R"({"laurent":{"-2":[1,0],"1":[0,2]}})");
  const RationalSymbol b = RationalSymbol::laurent({{-2, 1.0}, {1, cplx(0.0, 2.0)}});
  const RationalSymbol c = symbol_from_json(to_json(b));
  for (int k = 0; k < 5; ++k) {
    const cplx z = std::polar(1.0, 1.3 * k);
    expect_near(a(z), b(z));
    expect_near(c(z), b(z));
  }
  EXPECT_THROW(symbol_from_text(R"({"laurent":{"x":[1,0]}})"), Error);
}

TEST(Io, OperatorAndScalarRoundTrip) {
  const SpacePtr k = z_space(3);
  const OperatorMatrix c = conjugation_C_op(k);
  const OperatorMatrix back = operator_from_json(to_json(c));
  EXPECT_TRUE(back.antilinear());
  expect_matrix(back.matrix(), c.matrix());
  EXPECT_TRUE(extended_from_json(to_json(ExtendedScalar::infinity())).is_infinite());
  expect_near(extended_from_string("0.5,-1").value(), cplx(0.5, -1.0));
  json bad = to_json(c);
  bad["matrix"] = json::array({json::array({json::array({1, 0})})});
  EXPECT_THROW(operator_from_json(bad), Error);
}

TEST(Instance, RealSymmetricZerosAreConjugateClosed) {
  InstanceConstraints c;
  c.real_symmetric = true;
  const ProblemSpec s = generate_instance(1, {2, 2}, {0, 2}, c);
  std::vector<cplx> zeros = s.inner_at("u").zeros(), conj;
  for (cplx z : zeros) conj.push_back(std::conj(z));
  EXPECT_TRUE(same_zero_multiset(zeros, conj));
  EXPECT_TRUE(is_real_symmetric(s.inner_at("u")));
}

TEST(Instance, DeterministicForFixedSeed) {
  InstanceConstraints c;
  c.spaces = 3;
  EXPECT_EQ(to_json(generate_instance(1, {1, 4}, {0, 3}, c)).dump(), to_json(generate_instance(1, {1, 4}, {0, 3}, c)).dump());
  const ProblemSpec s = generate_instance(5, {1, 4}, {0, 3}, c);
  EXPECT_EQ(to_json(problem_spec_from_json(to_json(s))).dump(), to_json(s).dump());
}

TEST(Instance, InvariantSweep) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const ProblemSpec s = generate_instance(seed, {1, 6}, {0, 3});
    const InnerFunction& u = s.inner_at("u");
    ASSERT_GE(u.degree(), 1u);
    ASSERT_LE(u.degree(), 6u);
    for (cplx a : u.zeros()) ASSERT_LE(std::abs(a), kZeroModulusCap);
    ASSERT_NEAR(std::abs(u.constant()), 1.0, 1e-12);
    ASSERT_NEAR(std::abs(u(std::polar(1.0, 0.1 * static_cast<double>(seed)))), 1.0, 1e-10);
  }
}

TEST(Instance, RejectsBadRanges) {
  try {
    generate_instance(1, {0, 3}, {0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidRange);
  }
  EXPECT_THROW(generate_instance(1, {1, 33}, {0, 1}), Error);
  EXPECT_THROW(problem_spec_from_json(json{{"schema", "v0"}}), Error);
}

}  // namespace
