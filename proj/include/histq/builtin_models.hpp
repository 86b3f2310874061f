#pragma once

#include "histq/measurement.hpp"

namespace histq::builtin {

Ket z_plus();
Ket z_minus();
Ket x_plus();
Ket x_minus();

/// Singlet state of two spin-half particles.
Ket singlet();

/// The three trine states, 120 degrees apart on the Bloch equator.
std::vector<Ket> trine_states();

/// Stern-Gerlach z measurement: pointers Mp / Mm.
MeasurementModel spin_z();

/// Mach-Zehnder without the second beamsplitter: which-arm readout,
/// pointers Dp / Dm for the two detectors.
MeasurementModel mz_open();

/// Mach-Zehnder with the second beamsplitter: which-phase readout.
MeasurementModel mz_closed();

/// Three-outcome trine POVM realized on a three-dimensional pointer space;
/// outcomes M1 / M2 / M3.
MeasurementModel trine();

/// Weak probe coupling (strength epsilon) followed by a strong readout of
/// system and probe. The rotation [[ae, af], [be, bf]] writing |A>, |B> in
/// the readout basis |E>, |F> must be unitary. Outcomes E0..F2.
MeasurementModel weak_probe(double epsilon, Complex ae, Complex af, Complex be,
                            Complex bf);

/// The two switch settings of the three-path apparatus: both measure the
/// first-detector observable, co-measuring two incompatible observables.
MeasurementModel switch_beta();
MeasurementModel switch_gamma();

/// Every built-in projective model, with calibration data populated.
std::vector<std::pair<std::string, MeasurementModel>> calibrated_models();

}  // namespace histq::builtin
