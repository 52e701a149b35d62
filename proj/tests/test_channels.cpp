#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qcoh/channels.hpp"
#include "qcoh/measures.hpp"
#include "qcoh/ordering.hpp"
#include "qcoh/rng.hpp"

using namespace qcoh;
using M = CoherenceMeasure<double>;

namespace {

BlochVector<double> bloch(double t, double nx, double ny, double nz) {
  Eigen::Vector3d n(nx, ny, nz);
  n /= n.norm();
  return BlochVector<double>(t, n);
}

}  // namespace

TEST_CASE("kraus channel construction") {
  const auto id = KrausChannel<double>::identity(3);
  CHECK(id.dim() == 3);
  CHECK(id.incoherent());
  // a lone non-unitary operator fails completeness
  CMat<double> half = CMat<double>::Identity(2, 2) * 0.5;
  CHECK_THROWS_AS(KrausChannel<double>("broken", {half}), IncompleteKrausError);
  CHECK_THROWS_AS(KrausChannel<double>("empty", {}), IncompleteKrausError);
}

TEST_CASE("apply: identity, full damping, half dephasing") {
  Rng rng(7);
  const auto rho = rng.density(2);
  const auto same = apply(KrausChannel<double>::identity(2), rho);
  CHECK((same.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-14);

  const auto damped = apply(adc(1.0), rho);
  CHECK(std::real(damped(0, 0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(damped(0, 1)) < 1e-13);

  const auto plus = from_bloch(bloch(1, 1, 0, 0));
  const auto dephased = apply(pdc(0.5), plus);
  CHECK(std::real(dephased(0, 1)) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(std::real(dephased(0, 0)) == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(apply(adc(0.5), rng.density(3)), DimensionMismatchError);
}

TEST_CASE("adc: parameter edges and the displayed matrix") {
  CHECK_THROWS_AS(adc(-0.1), ParamOutOfRangeError);
  CHECK_THROWS_AS(adc(1.1), ParamOutOfRangeError);
  const auto rho = from_bloch(bloch(0.6, 1, 0, 0));
  const auto out = apply(adc(0.5), rho);
  CHECK(std::real(out(0, 1)) == doctest::Approx(0.6 * std::sqrt(0.5) / 2).epsilon(1e-12));
  // lower-right element q (1 - t nz) / 2
  CHECK(std::real(out(1, 1)) == doctest::Approx(0.5 * 0.5).epsilon(1e-12));
  // p = 0 acts as the identity
  const auto same = apply(adc(0.0), rho);
  CHECK((same.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("pdc: diagonal untouched, off-diagonal scaled by q") {
  const auto rho = from_bloch(bloch(0.8, 0.8, 0, 0.6));
  const auto out = apply(pdc(0.5), rho);
  CHECK(std::real(out(0, 0)) == doctest::Approx((1 + 0.48) / 2).epsilon(1e-12));
  CHECK(std::real(out(1, 1)) == doctest::Approx((1 - 0.48) / 2).epsilon(1e-12));
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const double p = rng.uniform();
    const auto r = rng.density(2);
    const auto o = apply(pdc(p), r);
    CHECK(std::abs(o(0, 1) - (1.0 - p) * r(0, 1)) < 1e-12);
    CHECK(std::abs(o(0, 0) - r(0, 0)) < 1e-14);
  }
  // p = 1 dephases completely
  const auto flat = apply(pdc(1.0), rho);
  CHECK(std::abs(flat(0, 1)) < 1e-14);
}

TEST_CASE("channel output stays a valid state") {
  Rng rng(13);
  for (int trial = 0; trial < 1000; ++trial) {
    const double p = rng.uniform();
    const auto rho = rng.density(2);
    const auto ch = trial % 2 == 0 ? adc(p) : pdc(p);
    const auto out = apply(ch, rho);  // construction revalidates
    CHECK(std::abs(std::real(out.matrix().trace()) - 1.0) < 1e-10);
    auto eig = hermitian_eig(out.matrix());
    CHECK(eig.eigenvalues.minCoeff() > -1e-10);
  }
}

TEST_CASE("adc bloch transform: closed form vs matrix evolution") {
  // z-axis case collapses to t' = p + q t
  const auto z = adc_bloch_transform(bloch(0.6, 0, 0, 1), 0.5);
  CHECK(z.t() == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(z.nz() == doctest::Approx(1.0).epsilon(1e-12));
  // p = 1 sends everything to |0><0|
  const auto top = adc_bloch_transform(bloch(0.3, 0, 1, 0), 1.0);
  CHECK(top.t() == doctest::Approx(1.0));
  CHECK(top.nz() == doctest::Approx(1.0));
  // p = 0 is the identity
  const auto same = adc_bloch_transform(bloch(0.7, 0, 1, 0), 0.0);
  CHECK(same.t() == doctest::Approx(0.7).epsilon(1e-12));

  Rng rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const BlochVector<double> b(rng.uniform(), rng.sphere());
    const double p = rng.uniform();
    const auto direct = to_bloch(apply(adc(p), from_bloch(b)));
    const auto closed = adc_bloch_transform(b, p);
    CHECK(std::abs(direct.t() - closed.t()) < 1e-10);
    if (closed.t() > 1e-8) CHECK((direct.n() - closed.n()).norm() < 1e-8);
  }
}

TEST_CASE("pdc bloch transform: closed form vs matrix evolution") {
  // dephasing fixes the z-axis
  for (double nz : {1.0, -1.0}) {
    const auto fixed = pdc_bloch_transform(bloch(0.4, 0, 0, nz), 0.7);
    CHECK(fixed.t() == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(fixed.nz() == doctest::Approx(nz).epsilon(1e-12));
  }
  // off-axis: t' = q t
  const auto off = pdc_bloch_transform(bloch(0.8, 1, 0, 0), 0.5);
  CHECK(off.t() == doctest::Approx(0.4).epsilon(1e-12));

  Rng rng(19);
  for (int trial = 0; trial < 1000; ++trial) {
    const BlochVector<double> b(rng.uniform(), rng.sphere());
    const double p = rng.uniform();
    const auto direct = to_bloch(apply(pdc(p), from_bloch(b)));
    const auto closed = pdc_bloch_transform(b, p);
    CHECK(std::abs(direct.t() - closed.t()) < 1e-10);
    if (closed.t() > 1e-8) CHECK((direct.n() - closed.n()).norm() < 1e-8);
  }
}

TEST_CASE("l1 scaling: q for phase damping, sqrt(q) for amplitude damping") {
  Rng rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const BlochVector<double> b(rng.uniform(), rng.sphere());
    const double p = rng.uniform();
    const auto pd = l1_scaling_check(b, p, DampingKind::pdc);
    CHECK(pd.holds);
    CHECK(pd.rhs == doctest::Approx(pd.rhs_printed));
    const auto ad = l1_scaling_check(b, p, DampingKind::adc);
    CHECK(ad.holds);  // the matrix-derived sqrt(q) identity
  }
  // p = 0: both sides equal the input coherence
  const auto none = l1_scaling_check(bloch(0.5, 1, 0, 0), 0.0, DampingKind::adc);
  CHECK(none.lhs == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(none.rhs == doctest::Approx(0.5).epsilon(1e-12));
  // worked case: ADC at p = 0.5 on t = 0.6 along x
  const auto ad = l1_scaling_check(bloch(0.6, 1, 0, 0), 0.5, DampingKind::adc);
  CHECK(ad.lhs == doctest::Approx(std::sqrt(0.5) * 0.6).epsilon(1e-12));
  CHECK(ad.rhs_printed == doctest::Approx(0.5 * 0.6).epsilon(1e-12));
  // PDC halves the coherence at p = 0.5
  const auto pd = l1_scaling_check(bloch(0.6, 1, 0, 0), 0.5, DampingKind::pdc);
  CHECK(pd.lhs == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("ordering dynamics: identity channel preserves everything") {
  Rng rng(29);
  const auto fam = fixed_mixedness_family(0.6, 12, rng);
  const auto dyn = ordering_dynamics<double>(fam, KrausChannel<double>::identity(2),
                                             {M::l1(), M::rel_ent(), M::alpha2()});
  for (const auto& md : dyn.stats) {
    CHECK(md.preserved == md.total);
    CHECK(md.strict_flips.empty());
  }
}

TEST_CASE("ordering dynamics: phase damping preserves fixed-t orderings") {
  Rng rng(31);
  const auto fam = fixed_mixedness_family(0.7, 21, rng);
  const auto dyn = ordering_dynamics<double>(fam, pdc(0.5), {M::rel_ent(), M::alpha2()});
  for (const auto& md : dyn.stats) {
    CHECK(md.preserved == md.total);
    CHECK(md.strict_flips.empty());
  }
  CHECK(dyn.before_report.violations.empty());
  CHECK(dyn.after_report.violations.empty());
}

TEST_CASE("ordering dynamics: amplitude damping flips some fixed-t pair") {
  // scan fixed-t rows over the n_z grid; the damped relative entropy peaks
  // off-center, so some pair near n_z = 0 reverses
  bool found = false;
  for (int row = 1; row < 50 && !found; ++row) {
    const double t = double(row) / 49.0;
    StateFamily<double> fam;
    fam.label = "fixed-t-grid";
    for (int j = 0; j < 50; ++j) {
      const double nz = -1.0 + 2.0 * double(j) / 49.0;
      const double perp = std::sqrt(std::max(0.0, 1.0 - nz * nz));
      fam.states.push_back(from_bloch(BlochVector<double>(t, Eigen::Vector3d(perp, 0, nz))));
    }
    const auto dyn = ordering_dynamics<double>(fam, adc(0.5), {M::rel_ent()});
    if (!dyn.stats[0].strict_flips.empty()) found = true;
  }
  CHECK(found);
}

TEST_CASE("dephasing and permutation mixtures are incoherent channels") {
  const auto deph = dephasing<double>(4, 0.3);
  CHECK(deph.incoherent());
  CHECK(deph.dim() == 4);
  const auto perm = permutation_mixture<double>({{1, 2, 0}, {0, 1, 2}}, {0.4, 0.6});
  CHECK(perm.incoherent());
  Rng rng(37);
  const auto rho = rng.density(3);
  // permutation channels relabel the basis, so coherence is unchanged and
  // the generalized monotonicity bound is tight
  auto chk = check_generalized_monotonicity(rho, perm, 1.5);
  CHECK(chk.holds);
  CHECK(chk.lhs == doctest::Approx(chk.rhs).epsilon(1e-9));
}
