#include "lpsw/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace lpsw {

namespace {

// FFTW plan creation is not thread-safe; execution through the new-array
// interface is. Plans are cached per (dim, n, sign) for the process lifetime
// and created with FFTW_UNALIGNED so they apply to any complex buffer.
class PlanCache {
public:
    fftw_plan get(int dim, int n, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_tuple(dim, n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;

        std::size_t size = 1;
        for (int ax = 0; ax < dim; ++ax) size *= static_cast<std::size_t>(n);
        std::vector<cplx> scratch(size);
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        int dims[2] = {n, n};
        fftw_plan p = fftw_plan_dft(dim, dims, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!p) throw std::runtime_error("fftw plan creation failed");
        plans_.emplace(key, p);
        return p;
    }

private:
    std::mutex mu_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

void execute_inplace(int dim, int n, int sign, cplx* data) {
    fftw_plan p = cache().get(dim, n, sign);
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(p, buf, buf);
}

}  // namespace

SpectralField from_physical(const PeriodicGrid& grid, int ncomp, const std::vector<cplx>& values) {
    if (values.size() != grid.size() * static_cast<std::size_t>(ncomp))
        throw std::invalid_argument("value array size does not match grid");
    SpectralField f(grid, ncomp);
    f.raw() = values;
    const double scale = 1.0 / static_cast<double>(grid.size());
    for (int m = 0; m < ncomp; ++m) {
        execute_inplace(grid.dim(), grid.n(), FFTW_FORWARD, f.comp_data(m));
        cplx* c = f.comp_data(m);
        for (std::size_t i = 0; i < grid.size(); ++i) c[i] *= scale;
    }
    return f;
}

std::vector<cplx> to_physical(const SpectralField& f) {
    std::vector<cplx> values = f.raw();
    for (int m = 0; m < f.ncomp(); ++m)
        execute_inplace(f.grid().dim(), f.grid().n(), FFTW_BACKWARD,
                        values.data() + static_cast<std::size_t>(m) * f.size());
    return values;
}

std::vector<double> to_physical_real(const SpectralField& f, double imag_tol) {
    std::vector<cplx> values = to_physical(f);
    double scale = 0.0;
    for (const auto& v : values) scale = std::max(scale, std::abs(v));
    double bound = imag_tol * std::max(scale, 1.0);
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (std::abs(values[i].imag()) > bound)
            throw std::domain_error("field is not real on the grid (imaginary residue " +
                                    std::to_string(values[i].imag()) + ")");
        out[i] = values[i].real();
    }
    return out;
}

SpectralField from_physical_real(const PeriodicGrid& grid, int ncomp,
                                 const std::vector<double>& values) {
    std::vector<cplx> tmp(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) tmp[i] = cplx(values[i], 0.0);
    return from_physical(grid, ncomp, tmp);
}

}  // namespace lpsw
