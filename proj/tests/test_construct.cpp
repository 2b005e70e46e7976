#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>

#include "sniep5/construct.hpp"
#include "sniep5/oracle.hpp"

using namespace sniep5;
using Catch::Approx;

namespace {

Spectrum5 spec(double a, double b, double c, double d, double e) {
    const std::array<double, 5> raw{a, b, c, d, e};
    return validate_and_sort(raw);
}

} // namespace

TEST_CASE("fiedler_glue of two 1x1 blocks") {
    SymMatrix a(1);
    a.set(0, 0, 0.5);
    const SymMatrix b = SymMatrix::zero(1);
    const std::array<double, 1> unit{1.0};
    const SymMatrix c = fiedler_glue(a, 0.5, unit, b, 0.0, unit, 0.5);
    REQUIRE(c.order() == 2);
    REQUIRE(c(0, 0) == 0.5);
    REQUIRE(c(1, 1) == 0.0);
    REQUIRE(c(0, 1) == Approx(std::sqrt(0.5)).margin(1e-15));
    const std::array<double, 2> want{1.0, -0.5};
    REQUIRE(verify(c, want) <= 1e-12);
}

TEST_CASE("fiedler_glue keeps non-Perron eigenvalues") {
    SymMatrix a(2);
    a.set(0, 1, 0.5);
    const PerronPair pa = perron_vector(a);
    const SymMatrix b = SymMatrix::zero(1);
    const std::array<double, 1> unit{1.0};
    const SymMatrix c = fiedler_glue(
        a, pa.value, std::span<const double>(pa.vector.data(), 2), b, 0.0, unit, 0.3);
    const std::array<double, 3> want{0.8, -0.3, -0.5};
    REQUIRE(verify(c, want) <= 1e-12);
    REQUIRE(c.min_entry() >= 0.0);
}

TEST_CASE("fiedler_glue preconditions") {
    const SymMatrix z1 = SymMatrix::zero(1);
    const std::array<double, 1> unit{1.0};
    SymMatrix big(3);
    const std::array<double, 3> u3{1.0, 0.0, 0.0};
    SymMatrix big2(3);
    // alpha1 below beta1.
    REQUIRE_THROWS_AS(fiedler_glue(z1, 0.0, unit, z1, 1.0, unit, 0.1), GluePreconditionError);
    // negative eps.
    REQUIRE_THROWS_AS(fiedler_glue(z1, 0.0, unit, z1, 0.0, unit, -0.1), GluePreconditionError);
    // combined order above 5.
    REQUIRE_THROWS_AS(fiedler_glue(big, 0.0, u3, big2, 0.0, u3, 0.0), DomainError);
    // vector length mismatch.
    REQUIRE_THROWS_AS(fiedler_glue(big, 0.0, unit, z1, 0.0, unit, 0.0), DomainError);
}

TEST_CASE("suleimanova_realize frozen 4x4") {
    const std::array<double, 4> lams{1.0, -0.2, -0.3, -0.5};
    const SymMatrix m = suleimanova_realize(lams);
    REQUIRE(m.order() == 4);
    for (int i = 0; i < 4; ++i) REQUIRE(m(i, i) == 0.0);
    REQUIRE(m(0, 1) == Approx(0.5).margin(1e-12));
    REQUIRE(m(0, 2) == Approx(0.34641016151377546).margin(1e-8));
    REQUIRE(m(1, 2) == Approx(0.34641016151377546).margin(1e-8));
    REQUIRE(m(0, 3) == Approx(0.26967994498529685).margin(1e-8));
    REQUIRE(m(1, 3) == Approx(0.26967994498529685).margin(1e-8));
    REQUIRE(m(2, 3) == Approx(0.23354968324845687).margin(1e-8));
    REQUIRE(verify(m, lams) <= 1e-10);
    REQUIRE(m.min_entry() >= 0.0);
}

TEST_CASE("suleimanova_realize small orders") {
    const std::array<double, 1> one{2.5};
    const SymMatrix m1 = suleimanova_realize(one);
    REQUIRE(m1(0, 0) == 2.5);

    const std::array<double, 2> two{1.0, -1.0};
    const SymMatrix m2 = suleimanova_realize(two);
    REQUIRE(m2(0, 1) == Approx(1.0).margin(1e-14));
    REQUIRE(verify(m2, two) <= 1e-12);

    const std::array<double, 5> five{1.0, -0.1, -0.2, -0.3, -0.4};
    const SymMatrix m5 = suleimanova_realize(five);
    REQUIRE(verify(m5, five) <= 1e-10);
    REQUIRE(m5.min_entry() >= 0.0);
}

TEST_CASE("suleimanova_realize preconditions") {
    const std::array<double, 3> possum{1.0, 0.5, -0.5};
    REQUIRE_THROWS_AS(suleimanova_realize(possum), PreconditionError);
    const std::array<double, 3> negsum{0.5, -0.4, -0.4};
    REQUIRE_THROWS_AS(suleimanova_realize(negsum), PreconditionError);
    const std::array<double, 3> unsorted{1.0, -0.5, -0.2};
    REQUIRE_THROWS_AS(suleimanova_realize(unsorted), PreconditionError);
    const std::array<double, 3> negfirst{-0.5, -0.5, -0.5};
    REQUIRE_THROWS_AS(suleimanova_realize(negfirst), PreconditionError);
}

TEST_CASE("loewy split on a frozen deep-d spectrum") {
    const NormalizedSpectrum n = normalize(spec(1.0, 0.1, -0.32, -0.38, -0.4));
    REQUIRE(n.d() == Approx(-0.6).margin(1e-15));
    const Partition part = loewy_partition_select(n);
    REQUIRE(part.k1 == std::vector<int>{3, 5});
    REQUIRE(part.k2 == std::vector<int>{4});
    const SymMatrix m = loewy_realize(n, part);
    const auto t = n.tuple();
    REQUIRE(verify(m, std::span<const double>(t)) <= 1e-10);
    REQUIRE(m.min_entry() >= 0.0);
    // Diagonal entries are block eigenvalue sums and may carry summation
    // dust of a few ulp rather than landing on exact zero.
    for (int i = 0; i < 5; ++i) REQUIRE(m(i, i) <= 1e-15);
}

TEST_CASE("loewy partition switches by regime") {
    // x beyond 2d+1 forces the {3,4} | {5} split.
    const NormalizedSpectrum wide = normalize(spec(1.0, 0.7, -0.52, -0.58, -0.6));
    // That spectrum is outside the region (x > d+1), so selection refuses it.
    REQUIRE_THROWS_AS(loewy_partition_select(wide), PreconditionError);

    const NormalizedSpectrum mid = normalize(spec(1.0, 0.5, -0.1, -0.7, -0.7));
    REQUIRE(mid.d() == Approx(-0.3).margin(1e-15));
    const Partition pm = loewy_partition_select(mid);
    REQUIRE(pm.k1 == std::vector<int>{3, 4});
    REQUIRE(pm.k2 == std::vector<int>{5});
    const SymMatrix mm = loewy_realize(mid, pm);
    const auto t = mid.tuple();
    REQUIRE(verify(mm, std::span<const double>(t)) <= 1e-10);

    const NormalizedSpectrum narrow = normalize(spec(1.0, 0.2, -0.1, -0.2, -0.9));
    REQUIRE(narrow.d() == Approx(-0.1).margin(1e-15));
    const Partition pn = loewy_partition_select(narrow);
    REQUIRE(pn.k1 == std::vector<int>{5});
    REQUIRE(pn.k2 == std::vector<int>{3, 4});
    const SymMatrix mn = loewy_realize(narrow, pn);
    const auto tn = narrow.tuple();
    REQUIRE(verify(mn, std::span<const double>(tn)) <= 1e-10);
}

TEST_CASE("split_realize takes the averaging branch on positive-sum input") {
    // Here eps = lambda1 + sum K1 = 0.9 makes lambda1 - eps < lambda2 + eps,
    // so the half-gap shift 0.25 applies; the eps branch would refuse to glue.
    const std::array<double, 5> lams{2.0, 1.5, -0.5, -0.6, -0.7};
    Partition part;
    part.k1 = {3, 4};
    part.k2 = {5};
    const SymMatrix m = sniep5::detail::split_realize(lams, part, Config{});
    REQUIRE(verify(m, lams) <= 1e-10);
    REQUIRE(m.min_entry() >= 0.0);
}

TEST_CASE("split_realize validates the partition") {
    const std::array<double, 5> lams{2.0, 1.5, -0.5, -0.6, -0.7};
    Partition bad;
    bad.k1 = {3};
    bad.k2 = {4};
    REQUIRE_THROWS_AS(sniep5::detail::split_realize(lams, bad, Config{}), PreconditionError);
    Partition dup;
    dup.k1 = {3, 4};
    dup.k2 = {4, 5};
    REQUIRE_THROWS_AS(sniep5::detail::split_realize(lams, dup, Config{}), PreconditionError);
}

TEST_CASE("matrix_A frozen entries and spectrum") {
    const double x = 0.3, d = -0.2;
    const SymMatrix m = matrix_A(x, d);
    const double f1 = std::sqrt(0.5 * (x + 1.0) * (d + 1.0 - x));
    const double g1 = std::sqrt(x * (x - d));
    REQUIRE(m(0, 2) == Approx(f1).margin(1e-15));
    REQUIRE(m(0, 4) == Approx(f1).margin(1e-15));
    REQUIRE(m(1, 4) == Approx(g1).margin(1e-15));
    REQUIRE(m(2, 3) == Approx(g1).margin(1e-15));
    REQUIRE(m(2, 4) == Approx(0.2).margin(1e-15));
    REQUIRE(m(0, 1) == 0.0);
    REQUIRE(m.min_entry() >= 0.0);
    const std::array<double, 5> want{1.0, 0.3, 0.0, -0.5, -0.8};
    REQUIRE(verify(m, want) <= 1e-12);
}

TEST_CASE("matrix_A endpoints of segment OJ") {
    const SymMatrix at_O = matrix_A(0.0, -0.1);
    const std::array<double, 5> wo{1.0, 0.0, 0.0, -0.1, -0.9};
    REQUIRE(verify(at_O, wo) <= 1e-12);

    const double d = -0.1;
    const SymMatrix at_J = matrix_A(2.0 * d + 1.0, d);
    const std::array<double, 5> wj{1.0, 0.8, 0.0, -0.9, -0.9};
    REQUIRE(verify(at_J, wj) <= 1e-12);

    REQUIRE_THROWS_AS(matrix_A(0.5, -0.6), PreconditionError);
    REQUIRE_THROWS_AS(matrix_A(0.9, -0.1), PreconditionError);
    REQUIRE_THROWS_AS(matrix_A(-0.2, -0.1), PreconditionError);
}

TEST_CASE("matrix_B frozen entries and spectrum") {
    const double x = 0.2, y = 0.1, d = -0.1;
    const SymMatrix m = matrix_B(x, y, d);
    const double u2 = 0.5 * ((d - x) * (x + y) + d + 1.0);
    REQUIRE(u2 == Approx(0.405).margin(1e-15));
    REQUIRE(m(0, 2) == Approx(std::sqrt(u2)).margin(1e-15));
    REQUIRE(m(0, 4) == Approx(std::sqrt(u2)).margin(1e-15));
    REQUIRE(m(1, 3) == Approx((d + 1.0) * y / (2.0 * u2)).margin(1e-15));
    REQUIRE(m(2, 4) == Approx(0.216 / (6.0 * u2)).margin(1e-14));
    REQUIRE(m(1, 4) == m(2, 3));
    REQUIRE(m(0, 1) == 0.0);
    REQUIRE(m(0, 3) == 0.0);
    REQUIRE(m.min_entry() >= 0.0);
    const std::array<double, 5> want{1.0, 0.2, 0.1, -0.4, -0.9};
    REQUIRE(verify(m, want) <= 1e-12);
}

TEST_CASE("matrix_B preconditions") {
    REQUIRE_THROWS_AS(matrix_B(0.2, -0.1, -0.1), PreconditionError);
    REQUIRE_THROWS_AS(matrix_B(0.2, 0.3, -0.1), PreconditionError);
    REQUIRE_THROWS_AS(matrix_B(0.7, 0.2, -0.1), PreconditionError);
    REQUIRE_THROWS_AS(matrix_B(0.2, 0.1, -0.6), PreconditionError);
    // s3 < 0 above the curve.
    REQUIRE_THROWS_AS(matrix_B(0.4, 0.25, -0.1), PreconditionError);
    // u degenerates at the far corner (1, 0+) when d = 0.
    REQUIRE_THROWS_AS(matrix_B(1.0, 1e-13, 0.0), DegenerateUError);
}

TEST_CASE("certify recomputes the spectrum") {
    const Spectrum5 s = spec(1.0, 0.2, 0.1, -0.4, -0.9);
    const SymMatrix m = matrix_B(0.2, 0.1, -0.1);
    const Certificate c = certify(Method::ExplicitB, m, s);
    REQUIRE(c.residual <= 1e-12);
    REQUIRE(c.method == Method::ExplicitB);
    for (int i = 0; i < 5; ++i)
        REQUIRE(c.achieved[static_cast<std::size_t>(i)] == Approx(s[i]).margin(1e-12));
    REQUIRE_THROWS_AS(certify(Method::Zero, SymMatrix::zero(5), s), VerificationError);
}

TEST_CASE("construct dispatches by region position") {
    const ConstructResult zero = construct(spec(0.0, 0.0, 0.0, 0.0, 0.0));
    REQUIRE(zero.verdict.realizable);
    REQUIRE(zero.verdict.region_label == RegionLabel::none);
    REQUIRE(zero.certificate.has_value());
    REQUIRE(zero.certificate->method == Method::Zero);
    REQUIRE(zero.certificate->matrix == SymMatrix::zero(5));

    const ConstructResult sul = construct(spec(1.0, -0.1, -0.2, -0.3, -0.4));
    REQUIRE(sul.verdict.realizable);
    REQUIRE(sul.certificate->method == Method::Suleimanova);
    REQUIRE(sul.certificate->residual <= 1e-8);

    const ConstructResult loewy = construct(spec(2.0, 1.0, 0.0, -1.0, -2.0));
    REQUIRE(loewy.verdict.realizable);
    REQUIRE(loewy.certificate->method == Method::LoewySplit);
    REQUIRE(loewy.certificate->residual <= 1e-8);
    REQUIRE(loewy.certificate->matrix.max_abs() > 0.5);

    const ConstructResult expb = construct(spec(1.0, 0.2, 0.1, -0.4, -0.9));
    REQUIRE(expb.verdict.realizable);
    REQUIRE(expb.certificate->method == Method::ExplicitB);
    REQUIRE(expb.certificate->residual <= 1e-8);
}

TEST_CASE("construct scales the certificate with lambda1") {
    const ConstructResult r = construct(spec(3.0, 0.6, 0.3, -1.2, -2.7));
    REQUIRE(r.verdict.realizable);
    REQUIRE(r.certificate->method == Method::ExplicitB);
    const SymMatrix unit = matrix_B(0.2, 0.1, -0.1);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            REQUIRE(r.certificate->matrix(i, j) == Approx(3.0 * unit(i, j)).margin(1e-12));
    REQUIRE(std::abs(r.certificate->matrix.trace()) <= 5e-12);
}

TEST_CASE("construct rejects with a reason") {
    const ConstructResult above = construct(spec(1.0, 0.4, 0.25, -0.75, -0.9));
    REQUIRE_FALSE(above.verdict.realizable);
    REQUIRE_FALSE(above.certificate.has_value());
    REQUIRE(above.verdict.failed_condition == "y <= h(x) fails (s3 < 0)");

    const ConstructResult mn = construct(spec(1.0, 0.7, -0.52, -0.58, -0.6));
    REQUIRE_FALSE(mn.verdict.realizable);
    REQUIRE(mn.verdict.failed_condition == "x <= d + 1 fails (lambda2 + lambda5 > 0)");

    const ConstructResult perron = construct(spec(1.0, 0.5, 0.5, 0.0, -2.0));
    REQUIRE_FALSE(perron.verdict.realizable);
    REQUIRE(perron.verdict.failed_condition == "lambda1 must dominate: |lambda5| > lambda1");
}

TEST_CASE("construct anchors the single point at d = -3/4") {
    const ConstructResult r = construct(spec(1.0, -0.25, -0.25, -0.25, -0.25));
    REQUIRE(r.verdict.realizable);
    REQUIRE(r.certificate->method == Method::Suleimanova);
    REQUIRE(r.certificate->residual <= 1e-8);
    REQUIRE(r.certificate->matrix.min_entry() >= 0.0);
}

TEST_CASE("construct and matrix_A agree on the OJ edge") {
    // y = 0 goes through the split; the explicit family must match its spectrum.
    const double d = -0.2, x = 0.35;
    const ConstructResult viaSplit = construct(spec(1.0, x, 0.0, d - x, -d - 1.0));
    REQUIRE(viaSplit.verdict.realizable);
    const SymMatrix a = matrix_A(x, d);
    const EigenDecomposition ea = jacobi_eigen(a);
    const EigenDecomposition es = jacobi_eigen(viaSplit.certificate->matrix);
    for (int i = 0; i < 5; ++i)
        REQUIRE(ea.values[static_cast<std::size_t>(i)] ==
                Approx(es.values[static_cast<std::size_t>(i)]).margin(1e-9));
}
