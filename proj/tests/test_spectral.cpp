// Transform and product layer against slow reference implementations: an
// O(N^2) direct DFT and a wrapped coefficient convolution. The fast paths
// must match these oracles to rounding, not merely converge to them.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "lpsw/besov.hpp"
#include "lpsw/fft.hpp"
#include "lpsw/field.hpp"
#include "lpsw/grid.hpp"
#include "lpsw/operators.hpp"
#include "lpsw/product.hpp"

using namespace lpsw;

namespace {

// direct synthesis u(x_i) = sum_k c_k e^{i xi.x_i}, one component
std::vector<cplx> direct_synthesis(const SpectralField& f, int comp) {
    const PeriodicGrid& g = f.grid();
    std::vector<cplx> out(g.size(), cplx(0.0, 0.0));
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto ri = g.unflatten(i);
        for (std::size_t m = 0; m < g.size(); ++m) {
            auto rm = g.unflatten(m);
            double phase = 0.0;
            for (int ax = 0; ax < g.dim(); ++ax)
                phase += g.xi(ax, rm[static_cast<size_t>(ax)]) *
                         g.x(ax, ri[static_cast<size_t>(ax)]);
            out[i] += f.at(comp, m) * std::polar(1.0, phase);
        }
    }
    return out;
}

// direct analysis c_k = (1/n^d) sum_i u(x_i) e^{-i xi.x_i}, one component
std::vector<cplx> direct_analysis(const PeriodicGrid& g, const std::vector<cplx>& vals) {
    std::vector<cplx> out(g.size(), cplx(0.0, 0.0));
    for (std::size_t m = 0; m < g.size(); ++m) {
        auto rm = g.unflatten(m);
        cplx acc(0.0, 0.0);
        for (std::size_t i = 0; i < g.size(); ++i) {
            auto ri = g.unflatten(i);
            double phase = 0.0;
            for (int ax = 0; ax < g.dim(); ++ax)
                phase += g.xi(ax, rm[static_cast<size_t>(ax)]) *
                         g.x(ax, ri[static_cast<size_t>(ax)]);
            acc += vals[i] * std::polar(1.0, -phase);
        }
        out[m] = acc / static_cast<double>(g.size());
    }
    return out;
}

// Wrapped coefficient convolution (a*b)_k = sum_m a_m b_{k-m} over integer
// frequencies. Valid as the exact product spectrum when the factors are
// band-limited enough that every product frequency stays on the lattice;
// callers guarantee that by construction.
SpectralField convolve(const SpectralField& a, const SpectralField& b) {
    const PeriodicGrid& g = a.grid();
    const int n = g.n();
    auto in_range = [&](int k) { return k > -n / 2 && k <= n / 2; };
    auto idx_of = [&](int k0, int k1) {
        int r0 = k0 >= 0 ? k0 : k0 + n;
        int r1 = k1 >= 0 ? k1 : k1 + n;
        return g.flatten(r0, r1);
    };
    SpectralField out(g, 1);
    for (std::size_t ma = 0; ma < g.size(); ++ma) {
        if (a.at(0, ma) == cplx(0.0, 0.0)) continue;
        auto ra = g.unflatten(ma);
        int ka0 = g.k(ra[0]), ka1 = g.k(ra[1]);
        for (std::size_t mb = 0; mb < g.size(); ++mb) {
            if (b.at(0, mb) == cplx(0.0, 0.0)) continue;
            auto rb = g.unflatten(mb);
            int k0 = ka0 + g.k(rb[0]);
            int k1 = ka1 + g.k(rb[1]);
            REQUIRE(in_range(k0));
            REQUIRE(in_range(k1));
            out.at(0, idx_of(k0, k1)) += a.at(0, ma) * b.at(0, mb);
        }
    }
    return out;
}

// random Hermitian field, band-limited to per-axis |k| <= kmax
SpectralField random_field(const PeriodicGrid& g, int ncomp, unsigned seed, int kmax) {
    std::mt19937 eng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    SpectralField f(g, ncomp);
    for (int c = 0; c < ncomp; ++c) {
        for (std::size_t idx = 0; idx < g.size(); ++idx) {
            auto r = g.unflatten(idx);
            int k0 = g.k(r[0]), k1 = g.k(r[1]);
            if (std::abs(k0) > kmax || std::abs(k1) > kmax) continue;
            if (g.on_nyquist(idx)) continue;
            std::size_t conj = g.conjugate_index(idx);
            if (conj < idx) continue;  // fill each pair once, from its lead index
            cplx v(unif(eng), conj == idx ? 0.0 : unif(eng));
            f.at(c, idx) = v;
            f.at(c, conj) = std::conj(v);
        }
    }
    return f;
}

double max_coeff_diff(const SpectralField& a, const SpectralField& b) {
    REQUIRE(a.grid() == b.grid());
    REQUIRE(a.ncomp() == b.ncomp());
    double worst = 0.0;
    for (int c = 0; c < a.ncomp(); ++c)
        for (std::size_t i = 0; i < a.size(); ++i)
            worst = std::max(worst, std::abs(a.at(c, i) - b.at(c, i)));
    return worst;
}

}  // namespace

TEST_CASE("synthesis matches the direct transform") {
    for (int dim : {1, 2}) {
        PeriodicGrid g(dim, 8);
        SpectralField f = random_field(g, 2, 11u + static_cast<unsigned>(dim), 3);
        std::vector<cplx> fast = to_physical(f);
        for (int c = 0; c < 2; ++c) {
            std::vector<cplx> slow = direct_synthesis(f, c);
            double worst = 0.0;
            for (std::size_t i = 0; i < g.size(); ++i)
                worst = std::max(worst, std::abs(slow[i] - fast[static_cast<std::size_t>(c) * g.size() + i]));
            CHECK(worst < 1e-13);
        }
    }
}

TEST_CASE("analysis matches the direct transform and inverts synthesis") {
    PeriodicGrid g(2, 8);
    std::mt19937 eng(7);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<cplx> vals(g.size());
    for (auto& v : vals) v = cplx(unif(eng), unif(eng));

    SpectralField fast = from_physical(g, 1, vals);
    std::vector<cplx> slow = direct_analysis(g, vals);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        worst = std::max(worst, std::abs(slow[i] - fast.at(0, i)));
    CHECK(worst < 1e-14);

    // round trip back to collocation values
    std::vector<cplx> back = to_physical(fast);
    worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) worst = std::max(worst, std::abs(back[i] - vals[i]));
    CHECK(worst < 1e-13);
}

TEST_CASE("real field round trip stays real") {
    PeriodicGrid g(2, 16);
    SpectralField f = random_field(g, 1, 23u, 5);
    CHECK(f.hermitian_residual() == 0.0);
    std::vector<double> vals = to_physical_real(f);
    SpectralField back = from_physical_real(g, 1, vals);
    CHECK(max_coeff_diff(f, back) < 1e-14);
}

TEST_CASE("parseval ties the coefficient norm to the collocation sum") {
    PeriodicGrid g(2, 16);
    SpectralField f = random_field(g, 2, 5u, 6);
    std::vector<cplx> vals = to_physical(f);
    double phys = 0.0;
    for (const auto& v : vals) phys += std::norm(v);
    phys = std::sqrt(phys / static_cast<double>(g.size()));
    CHECK(f.l2_coeff() == doctest::Approx(phys).epsilon(1e-13));
    CHECK(lp_norm(f, 2.0) == doctest::Approx(phys).epsilon(1e-13));
}

TEST_CASE("dealiased product equals the wrapped convolution") {
    PeriodicGrid g(2, 16);
    // per-axis |k| <= 4, so product frequencies stay within |k| <= 8 = n/2;
    // the convolution oracle is then the exact product spectrum
    for (unsigned seed : {1u, 2u, 3u}) {
        SpectralField a = random_field(g, 1, seed, 4);
        SpectralField b = random_field(g, 1, seed + 100, 3);
        SpectralField fast = dealiased_product(a, b);
        SpectralField slow = convolve(a, b);
        CHECK(max_coeff_diff(fast, slow) < 1e-13);
    }
}

TEST_CASE("dealiasing drops the wrapped tail instead of folding it back") {
    PeriodicGrid g(2, 8);
    // k=3 squared lands on k=6, outside the lattice range {-3..4}: the
    // dealiased square must keep only the resolved k=0 part of cos^2
    SpectralField f(g, 1);
    std::size_t plus = g.flatten(3, 0), minus = g.flatten(8 - 3, 0);
    f.at(0, plus) = cplx(0.5, 0.0);
    f.at(0, minus) = cplx(0.5, 0.0);
    SpectralField sq = dealiased_product(f, f);
    CHECK(std::abs(sq.at(0, 0) - cplx(0.5, 0.0)) < 1e-15);
    double off = 0.0;
    for (std::size_t i = 1; i < g.size(); ++i) off = std::max(off, std::abs(sq.at(0, i)));
    CHECK(off < 1e-15);
}

TEST_CASE("pad embed then truncate is the identity") {
    PeriodicGrid g(2, 16);
    SpectralField f = random_field(g, 2, 9u, 7);
    for (int factor : {2, 4}) {
        SpectralField fine = pad_embed(f, factor);
        CHECK(fine.grid().n() == factor * g.n());
        SpectralField back = pad_truncate(fine, g);
        CHECK(max_coeff_diff(f, back) == 0.0);
    }
}

TEST_CASE("pad context reproduces the free-function product") {
    PeriodicGrid g(2, 16);
    SpectralField a = random_field(g, 1, 31u, 5);
    SpectralField b = random_field(g, 1, 32u, 5);
    PadContext ctx(g, 2);
    std::vector<cplx> av = ctx.lift(a);
    std::vector<cplx> bv = ctx.lift(b);
    for (std::size_t i = 0; i < av.size(); ++i) av[i] *= bv[i];
    SpectralField viactx = ctx.lower(av);
    CHECK(max_coeff_diff(viactx, dealiased_product(a, b)) < 1e-14);
}

TEST_CASE("gradient and divergence act as i xi multipliers") {
    PeriodicGrid g(2, 16, std::array<double, 2>{2.0 * std::numbers::pi, 4.0 * std::numbers::pi});
    SpectralField q = random_field(g, 1, 41u, 5);
    SpectralField gr = gradient(q);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto r = g.unflatten(i);
        for (int ax = 0; ax < 2; ++ax) {
            cplx want = g.on_nyquist(i) ? cplx(0.0, 0.0)
                                        : cplx(0.0, g.xi(ax, r[static_cast<size_t>(ax)])) * q.at(0, i);
            worst = std::max(worst, std::abs(gr.at(ax, i) - want));
        }
    }
    CHECK(worst == 0.0);

    SpectralField u = random_field(g, 2, 42u, 5);
    SpectralField dv = divergence(u);
    worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto r = g.unflatten(i);
        cplx want(0.0, 0.0);
        if (!g.on_nyquist(i))
            for (int ax = 0; ax < 2; ++ax)
                want += cplx(0.0, g.xi(ax, r[static_cast<size_t>(ax)])) * u.at(ax, i);
        worst = std::max(worst, std::abs(dv.at(0, i) - want));
    }
    CHECK(worst == 0.0);
}

TEST_CASE("second-order identities: laplacian, viscous block, curl of gradient") {
    PeriodicGrid g(2, 16);
    SpectralField q = random_field(g, 1, 51u, 6);
    CHECK(max_coeff_diff(laplacian(q), divergence(gradient(q))) < 1e-13);

    SpectralField u = random_field(g, 2, 52u, 6);
    SpectralField want = laplacian(u);
    want += gradient(divergence(u));
    CHECK(max_coeff_diff(lame(u), want) < 1e-13);

    // the two mixed products round differently, so exact zero is not owed
    SpectralField curlgrad = curl2(gradient(q));
    CHECK(curlgrad.max_abs_coeff() < 1e-13);
}

TEST_CASE("symmetric gradient averages the two one-sided gradients") {
    PeriodicGrid g(2, 16);
    SpectralField u = random_field(g, 2, 61u, 5);
    SpectralField s = symmetric_gradient(u);
    REQUIRE(s.ncomp() == 4);
    SpectralField g0 = gradient(u.component(0));
    SpectralField g1 = gradient(u.component(1));
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        worst = std::max(worst, std::abs(s.at(0, i) - g0.at(0, i)));
        cplx off = 0.5 * (g0.at(1, i) + g1.at(0, i));
        worst = std::max(worst, std::abs(s.at(1, i) - off));
        worst = std::max(worst, std::abs(s.at(2, i) - off));
        worst = std::max(worst, std::abs(s.at(3, i) - g1.at(1, i)));
    }
    CHECK(worst == 0.0);
}

TEST_CASE("derivatives suppress their own nyquist axis and keep the other") {
    PeriodicGrid g(2, 8);
    SpectralField q(g, 1);
    std::size_t ny0 = g.flatten(4, 1);  // k0 unpaired, k1 ordinary
    std::size_t ny01 = g.flatten(4, 4);
    q.at(0, ny0) = cplx(1.0, 0.0);
    q.at(0, g.conjugate_index(ny0)) = cplx(1.0, 0.0);
    q.at(0, ny01) = cplx(1.0, 0.0);
    SpectralField gr = gradient(q);
    CHECK(std::abs(gr.at(0, ny0)) == 0.0);  // d0 sees the unpaired axis
    CHECK(std::abs(gr.at(1, ny0) - cplx(0.0, 1.0)) == 0.0);
    CHECK(std::abs(gr.at(0, ny01)) == 0.0);  // both axes unpaired
    CHECK(std::abs(gr.at(1, ny01)) == 0.0);
    // the laplacian symbol is even and keeps the full row
    SpectralField lap = laplacian(q);
    CHECK(std::abs(lap.at(0, ny01)) > 0.0);
}
