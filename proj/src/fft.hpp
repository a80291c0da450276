#pragma once

#include <complex>
#include <vector>

namespace lrdlab::detail {

/// Y_k = x_0 + (-1)^k x_{n-1} + 2 sum_{j=1}^{n-2} x_j cos(pi j k / (n - 1)), n >= 2.
std::vector<double> dct1(const std::vector<double>& x);

/// Unnormalised forward DFT, X_k = sum_j x_j e^{-2 pi i j k / n}.
std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& x);

/// Real input, full-length complex output.
std::vector<std::complex<double>> dft_real(const std::vector<double>& x);

}  // namespace lrdlab::detail
