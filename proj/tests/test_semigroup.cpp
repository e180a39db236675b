// Exact propagators against independently computed references: a
// scaling-and-squaring Taylor exponential for the 2x2 mode matrices, and
// per-mode scalar symbols for the heat and viscous flows. The closed-form
// fast paths must track these oracles to near machine precision, including
// at the defective and near-defective matrices where naive eigenvalue
// formulas lose digits.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "lpsw/fft.hpp"
#include "lpsw/field.hpp"
#include "lpsw/grid.hpp"
#include "lpsw/operators.hpp"
#include "lpsw/semigroup.hpp"
#include "lpsw/series.hpp"

using namespace lpsw;

namespace {

using Mat2 = std::array<double, 4>;

Mat2 matmul(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

double mat_absmax(const Mat2& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

// reference exponential: scale tM down below norm 1/2, sum the Taylor
// series until it stagnates in double precision, square back up
Mat2 expm2_reference(const Mat2& m, double t) {
    Mat2 a{m[0] * t, m[1] * t, m[2] * t, m[3] * t};
    int squarings = 0;
    while (mat_absmax(a) > 0.5) {
        for (double& v : a) v *= 0.5;
        ++squarings;
    }
    Mat2 sum{1.0, 0.0, 0.0, 1.0};
    Mat2 term{1.0, 0.0, 0.0, 1.0};
    for (int k = 1; k <= 40; ++k) {
        term = matmul(term, a);
        for (double& v : term) v /= k;
        Mat2 next = sum;
        for (int i = 0; i < 4; ++i) next[i] += term[i];
        if (next == sum) break;
        sum = next;
    }
    for (int s = 0; s < squarings; ++s) sum = matmul(sum, sum);
    return sum;
}

double mat_rel_err(const Mat2& got, const Mat2& want) {
    double scale = std::max(1.0, mat_absmax(want));
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(got[i] - want[i]));
    return worst / scale;
}

void set_pair(SpectralField& f, int comp, int k0, int k1, cplx c) {
    const PeriodicGrid& g = f.grid();
    int n = g.n();
    std::size_t idx = g.flatten((k0 % n + n) % n, (k1 % n + n) % n);
    f.at(comp, idx) = c;
    f.at(comp, g.conjugate_index(idx)) = std::conj(c);
}

}  // namespace

TEST_CASE("mode exponential matches the series reference across regimes") {
    std::vector<Mat2> cases = {
        {0.0, 1.0, 0.0, 0.0},          // nilpotent: e^{tM} = I + tM exactly
        {0.0, -1.0, 1.0, 0.0},         // rotation: cos/sin entries
        {-2.0, 1.0, 0.0, -2.0},        // defective, repeated eigenvalue
        {-1.0, 0.5, 0.25, -3.0},       // generic real spectrum
        {0.3, -0.7, 2.0, -0.1},        // complex pair, unstable trace
        {-4.0, 1.0, -1e-8, -4.0},      // nearly defective
        {0.0, -16.0, 16.0, -256.0},    // stiff mode-matrix shape
    };
    for (const Mat2& m : cases) {
        for (double t : {0.0, 0.01, 0.3, 1.0, 2.5}) {
            Mat2 got = expm2(m, t);
            Mat2 want = expm2_reference(m, t);
            CHECK(mat_rel_err(got, want) < 1e-13);
        }
    }
    // the nilpotent case is exact, not merely close
    Mat2 nil = expm2({0.0, 1.0, 0.0, 0.0}, 0.7);
    CHECK(nil[0] == 1.0);
    CHECK(nil[1] == 0.7);
    CHECK(nil[2] == 0.0);
    CHECK(nil[3] == 1.0);
}

TEST_CASE("mode exponential satisfies the group property") {
    Mat2 m{0.0, -3.0, 1.0, -9.0};
    Mat2 a = expm2(m, 0.4);
    Mat2 b = expm2(m, 0.35);
    Mat2 ab = matmul(a, b);
    Mat2 whole = expm2(m, 0.75);
    CHECK(mat_rel_err(ab, whole) < 1e-14);
}

TEST_CASE("heat flow is the scalar symbol per mode") {
    PeriodicGrid g(2, 16);
    SpectralField u(g, 2);
    set_pair(u, 0, 2, 3, cplx(0.4, -0.2));
    set_pair(u, 1, 5, 0, cplx(-0.1, 0.7));
    const double t = 0.37, mu = 1.7;
    SpectralField flowed = heat_flow(u, t, mu);
    double worst = 0.0;
    for (int c = 0; c < 2; ++c)
        for (std::size_t i = 0; i < g.size(); ++i) {
            cplx want = u.at(c, i) * std::exp(-mu * t * g.xi_norm2(i));
            worst = std::max(worst, std::abs(flowed.at(c, i) - want));
        }
    CHECK(worst < 1e-16);
    CHECK_THROWS_AS(heat_flow(u, -0.1, mu), std::invalid_argument);
}

TEST_CASE("viscous flow splits into potential and solenoidal decay rates") {
    PeriodicGrid g(2, 16);
    const int k0 = 3, k1 = 1;
    const double t = 0.21;
    // potential part: amplitude parallel to xi decays at rate 2|xi|^2
    SpectralField upar(g, 2);
    double nrm = std::sqrt(double(k0 * k0 + k1 * k1));
    set_pair(upar, 0, k0, k1, cplx(k0 / nrm, 0.0));
    set_pair(upar, 1, k0, k1, cplx(k1 / nrm, 0.0));
    SpectralField fpar = lame_flow(upar, t);
    SpectralField wantp = upar;
    wantp *= std::exp(-2.0 * t * nrm * nrm);
    fpar -= wantp;
    CHECK(fpar.max_abs_coeff() < 1e-15);

    // solenoidal part: amplitude perpendicular to xi decays at rate |xi|^2
    SpectralField uperp(g, 2);
    set_pair(uperp, 0, k0, k1, cplx(-k1 / nrm, 0.0));
    set_pair(uperp, 1, k0, k1, cplx(k0 / nrm, 0.0));
    SpectralField fperp = lame_flow(uperp, t);
    SpectralField wantq = uperp;
    wantq *= std::exp(-t * nrm * nrm);
    fperp -= wantq;
    CHECK(fperp.max_abs_coeff() < 1e-15);
}

TEST_CASE("divergence and curl of the viscous flow ride scalar heat flows") {
    PeriodicGrid g(2, 32);
    SpectralField u(g, 2);
    set_pair(u, 0, 1, 4, cplx(0.3, 0.5));
    set_pair(u, 0, 7, 2, cplx(-0.2, 0.1));
    set_pair(u, 1, 3, 3, cplx(0.6, -0.4));
    const double t = 0.11;
    SpectralField flowed = lame_flow(u, t);

    SpectralField dref = heat_flow(divergence(u), t, 2.0);
    SpectralField dgot = divergence(flowed);
    dgot -= dref;
    CHECK(dgot.max_abs_coeff() < 1e-14);

    SpectralField cref = heat_flow(curl2(u), t, 1.0);
    SpectralField cgot = curl2(flowed);
    cgot -= cref;
    CHECK(cgot.max_abs_coeff() < 1e-14);
}

TEST_CASE("flows compose: two short steps equal one long step") {
    PeriodicGrid g(2, 16);
    SpectralField u(g, 2);
    set_pair(u, 0, 2, 1, cplx(1.0, 0.3));
    set_pair(u, 1, 4, 4, cplx(-0.5, 0.2));
    SpectralField two = lame_flow(lame_flow(u, 0.13), 0.07);
    SpectralField one = lame_flow(u, 0.2);
    two -= one;
    CHECK(two.max_abs_coeff() < 1e-14);
}

TEST_CASE("duhamel weights integrate a linear forcing segment exactly") {
    // reference: fine Simpson quadrature of int_0^h e^{-lambda(h-s)} f(s) ds
    // with f linear; the closed-form weights must match for stiff, soft and
    // zero lambda alike
    auto quad = [](double lambda, double h, double f0, double f1) {
        const int nseg = 4000;
        double acc = 0.0;
        for (int i = 0; i < nseg; ++i) {
            double a = h * i / nseg, b = h * (i + 1) / nseg, m = 0.5 * (a + b);
            auto fval = [&](double s) {
                return std::exp(-lambda * (h - s)) * (f0 + (f1 - f0) * s / h);
            };
            acc += (b - a) / 6.0 * (fval(a) + 4.0 * fval(m) + fval(b));
        }
        return acc;
    };
    for (double lambda : {0.0, 1e-9, 0.5, 3.0, 40.0}) {
        const double h = 0.25;
        DuhamelWeights w = duhamel_weights(lambda, h);
        CHECK(w.decay == doctest::Approx(std::exp(-lambda * h)).epsilon(1e-15));
        CHECK(w.w0 == doctest::Approx(quad(lambda, h, 1.0, 0.0)).epsilon(1e-11));
        CHECK(w.w1 == doctest::Approx(quad(lambda, h, 0.0, 1.0)).epsilon(1e-11));
    }
}

TEST_CASE("duhamel heat solves constant and linear-in-time forcing exactly") {
    PeriodicGrid g(2, 16);
    const int k0 = 2, k1 = 0;
    const double xi2 = 4.0, T = 0.8;

    SpectralField u0(g, 1);
    set_pair(u0, 0, k0, k1, cplx(0.3, 0.0));
    SpectralField f(g, 1);
    set_pair(f, 0, k0, k1, cplx(1.0, 0.0));

    FieldSeries forcing;
    forcing.push(0.0, f);
    forcing.push(0.5 * T, f);
    forcing.push(T, f);

    SpectralField got = duhamel_heat(u0, forcing, T);
    // y' = -xi^2 y + 1 from 0.3: y(T) = e^{-xi^2 T} 0.3 + (1 - e^{-xi^2 T})/xi^2
    double want = std::exp(-xi2 * T) * 0.3 + (1.0 - std::exp(-xi2 * T)) / xi2;
    std::size_t idx = g.flatten(k0, k1);
    CHECK(std::abs(got.at(0, idx) - cplx(want, 0.0)) < 1e-15);

    // ramp forcing f(t) = t: y(T) = int_0^T e^{-xi^2(T-s)} s ds, closed form
    FieldSeries ramp;
    SpectralField f0(g, 1);
    ramp.push(0.0, f0);
    SpectralField fmid = f;
    fmid *= 0.5 * T;
    ramp.push(0.5 * T, fmid);
    SpectralField fend = f;
    fend *= T;
    ramp.push(T, fend);
    SpectralField zero0(g, 1);
    SpectralField got2 = duhamel_heat(zero0, ramp, T);
    double wantramp = (T - (1.0 - std::exp(-xi2 * T)) / xi2) / xi2;
    CHECK(std::abs(got2.at(0, idx) - cplx(wantramp, 0.0)) < 1e-15);
}

TEST_CASE("coupled mode matrix carries the advertised spectrum") {
    const double p = 1.0;
    for (double xi : {0.25, 1.0, 2.0, 3.0, 8.0}) {
        Mat2 m = coupled_mode_matrix(xi, p);
        CHECK(m[0] == 0.0);
        CHECK(m[1] == -xi);
        CHECK(m[2] == p * xi);
        CHECK(m[3] == -xi * xi);
        double tr = m[0] + m[3];
        double det = m[0] * m[3] - m[1] * m[2];
        CHECK(tr == -xi * xi);
        CHECK(det == p * xi * xi);
        // discriminant changes sign exactly at the collision radius 2 sqrt(p)
        double disc = tr * tr - 4.0 * det;
        if (xi < 2.0 * std::sqrt(p)) CHECK(disc < 0.0);
        if (xi > 2.0 * std::sqrt(p)) CHECK(disc > 0.0);
    }
}

TEST_CASE("coupled linear flow matches the mode exponential and scalar heat") {
    PeriodicGrid g(2, 16);
    const double p = 2.0, t = 0.3;
    const int k0 = 3, k1 = 4;
    const double xi = 5.0;

    // potential initial velocity: u = (k/|k|) b so div u^ = i |xi| b
    SpectralField q0(g, 1), u0(g, 2);
    const cplx qa(0.12, -0.08), ba(0.5, 0.2);
    set_pair(q0, 0, k0, k1, qa);
    set_pair(u0, 0, k0, k1, ba * (k0 / xi));
    set_pair(u0, 1, k0, k1, ba * (k1 / xi));

    auto [qt, ut] = coupled_linear_flow(q0, u0, t, p);

    // the compressible amplitude is (div u)^/|xi| = i (xi.u^)/|xi|
    std::size_t idx = g.flatten(k0, k1);
    const cplx i1(0.0, 1.0);
    cplx b0 = i1 * (double(k0) * u0.at(0, idx) + double(k1) * u0.at(1, idx)) / xi;
    Mat2 e = expm2_reference(coupled_mode_matrix(xi, p), t);
    cplx qwant = e[0] * qa + e[1] * b0;
    cplx bwant = e[2] * qa + e[3] * b0;
    CHECK(std::abs(qt.at(0, idx) - qwant) < 1e-13);
    cplx bgot = i1 * (double(k0) * ut.at(0, idx) + double(k1) * ut.at(1, idx)) / xi;
    CHECK(std::abs(bgot - bwant) < 1e-13);

    // solenoidal initial velocity rides the plain heat flow, q untouched
    SpectralField q1(g, 1), u1(g, 2);
    set_pair(u1, 0, k0, k1, cplx(-k1 / xi, 0.0));
    set_pair(u1, 1, k0, k1, cplx(k0 / xi, 0.0));
    auto [qs, us] = coupled_linear_flow(q1, u1, t, p);
    CHECK(qs.max_abs_coeff() < 1e-15);
    SpectralField want = heat_flow(u1, t, 1.0);
    us -= want;
    CHECK(us.max_abs_coeff() < 1e-14);

    // the mean modes are invariant
    SpectralField qm(g, 1), um(g, 2);
    qm.at(0, 0) = cplx(0.7, 0.0);
    um.at(1, 0) = cplx(-0.4, 0.0);
    auto [qmt, umt] = coupled_linear_flow(qm, um, 1.0, p);
    CHECK(qmt.at(0, 0) == cplx(0.7, 0.0));
    CHECK(umt.at(1, 0) == cplx(-0.4, 0.0));
}

TEST_CASE("coupled flow composes like a semigroup") {
    PeriodicGrid g(2, 16);
    const double p = 1.0;
    SpectralField q0(g, 1), u0(g, 2);
    set_pair(q0, 0, 1, 2, cplx(0.2, 0.1));
    set_pair(u0, 0, 1, 2, cplx(-0.3, 0.4));
    set_pair(u0, 1, 4, 0, cplx(0.25, 0.0));
    auto [q1, u1] = coupled_linear_flow(q0, u0, 0.12, p);
    auto [q2, u2] = coupled_linear_flow(q1, u1, 0.23, p);
    auto [qw, uw] = coupled_linear_flow(q0, u0, 0.35, p);
    q2 -= qw;
    u2 -= uw;
    CHECK(q2.max_abs_coeff() < 1e-13);
    CHECK(u2.max_abs_coeff() < 1e-13);
}
