// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace kvn {

// J_nu(x) for real nu in [0, 50], x >= 0: ascending series below nu + 10, Hankel asymptotics above.
double bessel_j(double nu, double x);
// k-th zero of J_nu on [0, inf), counting x = 0 itself when nu > 0 (the labelling used for the
// Aharonov-Bohm levels, where alpha_{2,1} = 3.8317). Accurate to 1e-10.
double bessel_zero(double nu, int k);
// Usual k-th strictly positive zero j_{nu,k}.
double standard_bessel_zero(double nu, int k);

}  // namespace kvn
