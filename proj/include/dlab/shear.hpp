#pragma once

#include <complex>
#include <map>
#include <stdexcept>

namespace dlab {

/// Fourier data of a zero-mean background shear profile. Only finitely many
/// modes may be present; mode 0 is forbidden.
struct ShearSpectrum {
    double A = 1.0;                          ///< advection amplitude
    std::map<int, std::complex<double>> chi; ///< mode index -> coefficient

    void set(int mode, std::complex<double> value) {
        if (mode == 0) throw std::invalid_argument("ShearSpectrum: mode 0 must vanish");
        chi[mode] = value;
        chi[-mode] = std::conj(value);  // profile is real
    }
};

/// D_T = A^2 sum_{m != 0} |chi_m|^2 / m^2. The enhanced diffusivity of the
/// averaged tracer is then nu + D_T / nu.
inline double taylor_correction(const ShearSpectrum& spec) {
    double s = 0.0;
    for (const auto& [mode, c] : spec.chi) {
        if (mode == 0) {
            if (std::abs(c) != 0.0)
                throw std::invalid_argument("taylor_correction: nonzero mean mode");
            continue;
        }
        s += std::norm(c) / (static_cast<double>(mode) * mode);
    }
    return spec.A * spec.A * s;
}

}  // namespace dlab
