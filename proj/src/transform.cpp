#include "vb/transform.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

#include "vb/errors.hpp"

// =============================================================================
// FFT backing.
//
// Plans are cached per grid size and created once under a lock: the FFTW
// planner is not thread-safe, while executing a cached plan on fresh arrays
// (fftw_execute_dft) is.  Plans are created with FFTW_ESTIMATE so the chosen
// algorithm depends only on N, keeping trajectories reproducible run to run,
// and FFTW_UNALIGNED so they accept any properly typed buffer.
// =============================================================================

namespace vb {
namespace {

inline fftw_complex* cast(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

struct PlanPair {
    fftw_plan forward = nullptr;   // exp(-ik.x) sums, unnormalized
    fftw_plan backward = nullptr;  // exp(+ik.x) sums, unnormalized
};

PlanPair& plans_for(int n) {
    static std::mutex mutex;
    static std::map<int, PlanPair> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) {
        const std::size_t m = static_cast<std::size_t>(n) * n;
        std::vector<std::complex<double>> a(m), b(m);
        PlanPair p;
        p.forward = fftw_plan_dft_2d(n, n, cast(a.data()), cast(b.data()), FFTW_FORWARD,
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
        p.backward = fftw_plan_dft_2d(n, n, cast(a.data()), cast(b.data()), FFTW_BACKWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!p.forward || !p.backward) throw ConstraintViolation("transform: fftw planning failed");
        it = cache.emplace(n, p).first;
    }
    return it->second;
}

}  // namespace

std::vector<double> inverse_transform(const SpectralField& f) {
    if (!f.grid) throw ConstraintViolation("inverse_transform: field has no grid");
    const int n = f.grid->size();
    const std::size_t m = f.grid->modes();
    if (f.coeffs.size() != m) throw ConstraintViolation("inverse_transform: coefficient count mismatch");

    std::vector<std::complex<double>> in(f.coeffs);  // keep the input pristine
    std::vector<std::complex<double>> out(m);
    fftw_execute_dft(plans_for(n).backward, cast(in.data()), cast(out.data()));

    std::vector<double> samples(m);
    for (std::size_t p = 0; p < m; ++p) samples[p] = out[p].real();
    return samples;
}

SpectralField forward_transform(const GridPtr& grid, std::span<const double> samples) {
    if (!grid) throw ConstraintViolation("forward_transform: null grid");
    const int n = grid->size();
    const std::size_t m = grid->modes();
    if (samples.size() != m)
        throw ConstraintViolation("forward_transform: expected " + std::to_string(m) +
                                  " samples, got " + std::to_string(samples.size()));

    std::vector<std::complex<double>> in(m);
    for (std::size_t p = 0; p < m; ++p) in[p] = {samples[p], 0.0};

    SpectralField f(grid);
    fftw_execute_dft(plans_for(n).forward, cast(in.data()), cast(f.coeffs.data()));

    const double scale = 1.0 / static_cast<double>(m);
    for (auto& c : f.coeffs) c *= scale;

    // The numerical DFT of real samples is Hermitian only to roundoff; project
    // exactly so downstream invariant checks see clean data.
    hermitian_symmetrize(f);
    return f;
}

}  // namespace vb
