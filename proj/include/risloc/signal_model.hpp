// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The risloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <random>
#include <string>

#include <Eigen/Core>

#include "risloc/geometry.hpp"

namespace risloc {

using cplx = std::complex<double>;

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

enum class Regime { NearField, FarField };
enum class LosMode { Auto, ForcedLoS, ForcedNLoS };

const char* to_string(Regime r);

/// OFDM downlink waveform and link budget.
struct WaveformParams {
  int n_subcarriers = 3000;
  double subcarrier_spacing = 120e3;  // Hz
  double carrier_frequency = 28e9;    // Hz
  double wavelength_override = 0.0;   // meters, 0 = c / carrier_frequency
  int n_transmissions = 25;
  double total_power = 0.1;      // W, equals N * delta_f * E_s
  double noise_psd = 3.981e-21;  // W/Hz, before the noise figure
  double noise_figure_db = 8.0;
  // Optional per-subcarrier pilot s (length N, same for every t). Empty means
  // the constant pilot sqrt(E_s) * 1_N.
  Eigen::VectorXcd pilot;

  double wavelength() const;
  double symbol_energy() const { return total_power / (n_subcarriers * subcarrier_spacing); }
  double effective_noise_psd() const;
  bool constant_pilot() const { return pilot.size() == 0; }
  Eigen::VectorXcd pilot_vector() const;
  void validate() const;
};

struct Scenario {
  Vec3 bs = Vec3(5.0, 5.0, 0.0);
  Vec3 ue = Vec3(0.0, 1.0, 0.0);
  std::vector<RisDescriptor> ris_list;
  std::vector<Obstacle> obstacles;
  WaveformParams waveform;
  double clock_bias = 0.0;  // seconds
  LosMode los_mode = LosMode::Auto;
  std::uint64_t seed = 0;

  bool los_present() const;
  void validate() const;
};

/// T x M unit-modulus coefficients for one RIS. Rows outside the RIS's
/// time slots are zero (elements absorbing).
struct PhaseProfileSchedule {
  Eigen::MatrixXcd coefficients;
  std::vector<bool> active;  // per transmission
  std::uint64_t seed = 0;

  std::size_t transmissions() const { return static_cast<std::size_t>(coefficients.rows()); }
  std::size_t elements() const { return static_cast<std::size_t>(coefficients.cols()); }
};

enum ProfileWarning : unsigned {
  kProfileOk = 0,
  kAodUnidentifiable = 1u << 0,         // fewer than 2 transmissions
  kNearFieldUnderdetermined = 1u << 1,  // fewer than 3 transmissions
  kFewActiveSlots = 1u << 2,            // some RIS has < 2 active slots after slotting
};

struct ProfileSet {
  std::vector<PhaseProfileSchedule> schedules;  // one per RIS
  unsigned warnings = kProfileOk;
};

/// Complex path gains; index 0 is the direct path, k > 0 the k-th RIS.
struct PathGains {
  std::vector<cplx> alpha;
  bool los_present = true;
};

/// Geometric delay of path k (0 = direct) including the clock bias.
double path_delay(const Scenario& scenario, std::size_t k);

/// Exact spherical-wavefront RIS response, phase-referenced to the center.
Eigen::VectorXcd steering_nf(const RisDescriptor& ris, const Vec3& point, double wavelength);

/// Planar-wavefront (linear phase) RIS response for a departure direction.
Eigen::VectorXcd steering_ff(const RisDescriptor& ris, const AodAngles& angles, double wavelength);

/// Wavevector -(2 pi / lambda) * direction(angles).
Vec3 wavevector(const AodAngles& angles, double wavelength);

/// Friis magnitudes with uniform random phases drawn from scenario.seed.
PathGains friis_gains(const Scenario& scenario);

/// Random unit-modulus profiles. With several RIS, transmission t is assigned
/// to RIS t mod n_ris and the other RIS are switched off in that slot, which
/// makes sum_t w_{k,t}^H w_{k',t} = 0 exactly for k != k'.
ProfileSet random_profiles(std::span<const std::size_t> element_counts, std::size_t transmissions,
                           std::uint64_t seed);
ProfileSet random_profiles(std::size_t elements, std::size_t transmissions, std::uint64_t seed,
                           std::size_t n_ris);

/// Profiles matching the scenario's RIS list, T and seed.
ProfileSet random_profiles(const Scenario& scenario);

/// Effective path coefficient beta_{k,t}; k = 0 is the direct path.
cplx beta(const Scenario& scenario, const ProfileSet& profiles, const PathGains& gains,
          Regime regime, std::size_t k, std::size_t t);

/// Noise-free received vector mu_t over the N subcarriers.
Eigen::VectorXcd noise_free_observation(const Scenario& scenario, const ProfileSet& profiles,
                                        const PathGains& gains, Regime regime, std::size_t t);

/// Delay steering vector d(tau) = [exp(-j 2 pi n tau delta_f)]_n.
Eigen::VectorXcd delay_steering(double tau, double subcarrier_spacing, int n_subcarriers);

/// CSV dump of a schedule: header "t,m,real,imag", one row per coefficient.
std::string schedule_csv(const PhaseProfileSchedule& schedule);

/// Deterministic uniform [0, 1) stream: mt19937_64 seeded through
/// splitmix64(seed, stream), 53-bit mantissa extraction. Bitwise identical
/// across platforms.
class PhaseRng {
 public:
  PhaseRng(std::uint64_t seed, std::uint64_t stream);
  double uniform();
  double phase();  // uniform in [0, 2 pi)

 private:
  std::mt19937_64 engine_;
};

/// Per-RIS data that does not depend on the UE: element offsets,
/// BS-side wavefront and the phase schedule.
struct RisLink {
  RisDescriptor descriptor;
  Eigen::MatrixX3d offsets;       // q_m, M x 3
  Eigen::VectorXcd bs_steering;   // a(p_BS, p_k), exact spherical wavefront
  PhaseProfileSchedule schedule;
  Eigen::MatrixXcd profile_columns;  // M x T, column t = w_{k,t} (contiguous)
};

/// UE-independent part of the observation model.
struct LinkModel {
  WaveformParams waveform;
  Vec3 bs = Vec3::Zero();
  std::vector<RisLink> ris;
  double wavelength = 0.01;
  double symbol_energy = 0.0;

  LinkModel() = default;
  LinkModel(const Scenario& scenario, const ProfileSet& profiles);
  std::size_t transmissions() const { return static_cast<std::size_t>(waveform.n_transmissions); }
};

/// Channel parameters the observation is evaluated at. In the near-field
/// model the RIS responses depend on `ue`; in the far-field model on `aod`.
/// Delays and gains are free parameters in both.
struct ChannelState {
  Vec3 ue = Vec3::Zero();
  std::vector<double> delays;    // index 0 = direct path
  std::vector<AodAngles> aod;    // per RIS
  std::vector<cplx> gains;       // index 0 = direct path
  bool los = true;
};

ChannelState channel_state(const Scenario& scenario, const PathGains& gains);

/// RIS response a(p_k, p) (NF) or a(psi) (FF) for RIS k at the given state.
Eigen::VectorXcd ris_response(const LinkModel& link, const ChannelState& state, Regime regime,
                              std::size_t k);

/// b = ris_response .* bs_steering, the cascaded per-element response.
Eigen::VectorXcd cascaded_response(const LinkModel& link, const ChannelState& state,
                                   Regime regime, std::size_t k);

/// beta_{k,t} for path k at the given state; k = 0 is the direct path.
cplx path_coefficient(const LinkModel& link, const ChannelState& state, Regime regime,
                      std::size_t k, std::size_t t);

/// mu_t at an arbitrary channel state.
Eigen::VectorXcd observe(const LinkModel& link, const ChannelState& state, Regime regime,
                         std::size_t t);

}  // namespace risloc
