#include "swlift/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace swlift::spectral {

namespace {

// Plan cache keyed by (n, ncomp, sign). Plans are created with FFTW_UNALIGNED
// so they can execute on any buffer via the new-array interface.
struct PlanCache {
    std::map<std::tuple<int, int, int>, fftw_plan> plans;
    std::mutex mutex;

    fftw_plan get(int n, int ncomp, int sign) {
        std::scoped_lock lock(mutex);
        auto key = std::make_tuple(n, ncomp, sign);
        auto it = plans.find(key);
        if (it != plans.end()) return it->second;

        std::int64_t vol = std::int64_t(n) * n * n * n;
        auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * vol * ncomp));
        if (!buf) throw std::bad_alloc();
        int dims[4] = {n, n, n, n};
        fftw_plan p = fftw_plan_many_dft(4, dims, ncomp, buf, nullptr, ncomp, 1, buf, nullptr,
                                         ncomp, 1, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(buf);
        if (!p) throw std::runtime_error("fftw plan creation failed");
        plans.emplace(key, p);
        return p;
    }
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

void execute(const Grid4& g, cvector& data, int ncomp, int sign) {
    if (std::int64_t(data.size()) != g.volume() * ncomp)
        throw std::invalid_argument("spectral: size mismatch");
    fftw_plan p = cache().get(g.n, ncomp, sign);
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(p, ptr, ptr);
}

}  // namespace

void forward(const Grid4& g, cvector& data, int ncomp) {
    execute(g, data, ncomp, FFTW_FORWARD);
}

void inverse(const Grid4& g, cvector& data, int ncomp) {
    execute(g, data, ncomp, FFTW_BACKWARD);
    double s = 1.0 / double(g.volume());
    for (auto& z : data) z *= s;
}

void apply_ik(const Grid4& g, cvector& spectrum, int ncomp, int axis) {
    if (axis < 0 || axis > 3) throw std::invalid_argument("spectral: bad axis");
    const int n = g.n;
    std::int64_t s = 0;
    for (int i0 = 0; i0 < n; ++i0)
        for (int i1 = 0; i1 < n; ++i1)
            for (int i2 = 0; i2 < n; ++i2)
                for (int i3 = 0; i3 < n; ++i3, ++s) {
                    int idx = axis == 0 ? i0 : axis == 1 ? i1 : axis == 2 ? i2 : i3;
                    int k = g.frequency(idx);
                    if (idx == n / 2) k = 0;  // Nyquist derivative pinned to zero
                    std::complex<double> ik{0.0, double(k)};
                    for (int c = 0; c < ncomp; ++c) spectrum[s * ncomp + c] *= ik;
                }
}

cvector partial(const Grid4& g, const cvector& data, int ncomp, int axis) {
    cvector out = data;
    forward(g, out, ncomp);
    apply_ik(g, out, ncomp, axis);
    inverse(g, out, ncomp);
    return out;
}

}
