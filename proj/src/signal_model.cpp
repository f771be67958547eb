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

#include "risloc/signal_model.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "risloc/error.hpp"

namespace risloc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t kGainStream = 1;
constexpr std::uint64_t kProfileStreamBase = 16;

}  // namespace

const char* to_string(Regime r) { return r == Regime::NearField ? "nf" : "ff"; }

PhaseRng::PhaseRng(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(splitmix64(seed) ^ (stream * 0xd1b54a32d192ed03ULL))) {}

double PhaseRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double PhaseRng::phase() { return kTwoPi * uniform(); }

double WaveformParams::wavelength() const {
  if (wavelength_override > 0.0) return wavelength_override;
  return kSpeedOfLight / carrier_frequency;
}

double WaveformParams::effective_noise_psd() const {
  return noise_psd * std::pow(10.0, noise_figure_db / 10.0);
}

Eigen::VectorXcd WaveformParams::pilot_vector() const {
  if (!constant_pilot()) return pilot;
  return Eigen::VectorXcd::Constant(n_subcarriers, cplx(std::sqrt(symbol_energy()), 0.0));
}

void WaveformParams::validate() const {
  std::ostringstream err;
  if (n_subcarriers < 2) err << " n_subcarriers must be >= 2;";
  if (!(subcarrier_spacing > 0.0)) err << " subcarrier spacing must be positive;";
  if (!(carrier_frequency > 0.0) && !(wavelength_override > 0.0))
    err << " carrier frequency must be positive;";
  if (wavelength_override < 0.0) err << " wavelength override must be positive;";
  if (n_transmissions < 1) err << " n_transmissions must be >= 1;";
  if (!(total_power > 0.0)) err << " total power must be positive;";
  if (!(noise_psd > 0.0)) err << " noise PSD must be positive;";
  if (!std::isfinite(noise_figure_db)) err << " noise figure must be finite;";
  if (!constant_pilot() && pilot.size() != n_subcarriers) err << " pilot length must equal N;";
  const std::string msg = err.str();
  if (!msg.empty()) throw ValidationError("invalid waveform:" + msg);
}

bool Scenario::los_present() const {
  switch (los_mode) {
    case LosMode::ForcedLoS: return true;
    case LosMode::ForcedNLoS: return false;
    case LosMode::Auto: break;
  }
  return !los_blocked(bs, ue, obstacles);
}

void Scenario::validate() const {
  waveform.validate();
  for (const auto& r : ris_list) r.validate();
  if (!bs.allFinite() || !ue.allFinite()) throw ValidationError("non-finite BS or UE position");
  if ((ue - bs).norm() == 0.0) throw GeometryError("UE coincides with the BS");
  for (const auto& r : ris_list) {
    if ((ue - r.center).norm() == 0.0) throw GeometryError("UE coincides with a RIS center");
    if ((bs - r.center).norm() == 0.0) throw GeometryError("BS coincides with a RIS center");
  }
  for (const auto& o : obstacles) {
    if ((o.endpoint_a - o.endpoint_b).norm() == 0.0)
      throw ValidationError("obstacle endpoints coincide");
  }
}

double path_delay(const Scenario& s, std::size_t k) {
  if (k == 0) return (s.ue - s.bs).norm() / kSpeedOfLight + s.clock_bias;
  if (k > s.ris_list.size()) throw std::out_of_range("path index out of range");
  const Vec3& pk = s.ris_list[k - 1].center;
  return (s.ue - pk).norm() / kSpeedOfLight + (pk - s.bs).norm() / kSpeedOfLight + s.clock_bias;
}

Eigen::VectorXcd steering_nf(const RisDescriptor& ris, const Vec3& point, double wavelength) {
  const Eigen::MatrixX3d q = element_offsets(ris);
  const double kappa = kTwoPi / wavelength;
  const Vec3 r = point - ris.center;
  const double dk = r.norm();
  Eigen::VectorXcd a(q.rows());
  for (Eigen::Index m = 0; m < q.rows(); ++m) {
    const double dm = (r - q.row(m).transpose()).norm();
    if (dm == 0.0) throw GeometryError("singular geometry: point coincides with a RIS element");
    a[m] = std::polar(1.0, -kappa * (dm - dk));
  }
  return a;
}

Vec3 wavevector(const AodAngles& angles, double wavelength) {
  return -(kTwoPi / wavelength) * aod_direction(angles);
}

Eigen::VectorXcd steering_ff(const RisDescriptor& ris, const AodAngles& angles, double wavelength) {
  const Eigen::MatrixX3d q = element_offsets(ris);
  const Eigen::VectorXd phase = q * wavevector(angles, wavelength);
  Eigen::VectorXcd a(q.rows());
  for (Eigen::Index m = 0; m < q.rows(); ++m) a[m] = std::polar(1.0, -phase[m]);
  return a;
}

PathGains friis_gains(const Scenario& s) {
  const double lambda = s.waveform.wavelength();
  const double d_direct = (s.ue - s.bs).norm();
  if (!(d_direct > 0.0)) throw GeometryError("UE coincides with the BS");
  PhaseRng rng(s.seed, kGainStream);
  PathGains g;
  g.los_present = s.los_present();
  g.alpha.resize(s.ris_list.size() + 1);
  const double phase0 = rng.phase();
  g.alpha[0] = g.los_present ? std::polar(lambda / (4.0 * std::numbers::pi * d_direct), phase0)
                             : cplx(0.0, 0.0);
  for (std::size_t k = 0; k < s.ris_list.size(); ++k) {
    const double d_bs = (s.ris_list[k].center - s.bs).norm();
    const double d_ue = (s.ue - s.ris_list[k].center).norm();
    if (!(d_bs > 0.0) || !(d_ue > 0.0)) throw GeometryError("zero RIS path distance");
    const double fs = 4.0 * std::numbers::pi;
    g.alpha[k + 1] = std::polar(lambda * lambda / (fs * fs * d_bs * d_ue), rng.phase());
  }
  return g;
}

ProfileSet random_profiles(std::span<const std::size_t> element_counts, std::size_t transmissions,
                           std::uint64_t seed) {
  ProfileSet out;
  const std::size_t n_ris = element_counts.size();
  if (transmissions < 2) out.warnings |= kAodUnidentifiable;
  if (transmissions < 3) out.warnings |= kNearFieldUnderdetermined;
  out.schedules.reserve(n_ris);
  for (std::size_t k = 0; k < n_ris; ++k) {
    PhaseRng rng(seed, kProfileStreamBase + k);
    PhaseProfileSchedule sched;
    sched.seed = seed;
    const auto rows = static_cast<Eigen::Index>(transmissions);
    const auto cols = static_cast<Eigen::Index>(element_counts[k]);
    sched.coefficients.resize(rows, cols);
    sched.active.assign(transmissions, true);
    std::size_t active = 0;
    for (Eigen::Index t = 0; t < rows; ++t) {
      const bool on = n_ris <= 1 || static_cast<std::size_t>(t) % n_ris == k;
      sched.active[static_cast<std::size_t>(t)] = on;
      active += on;
      for (Eigen::Index m = 0; m < cols; ++m) {
        const double ph = rng.phase();
        sched.coefficients(t, m) = on ? std::polar(1.0, ph) : cplx(0.0, 0.0);
      }
    }
    if (n_ris > 1 && active < 2) out.warnings |= kFewActiveSlots;
    out.schedules.push_back(std::move(sched));
  }
  return out;
}

ProfileSet random_profiles(std::size_t elements, std::size_t transmissions, std::uint64_t seed,
                           std::size_t n_ris) {
  const std::vector<std::size_t> counts(n_ris, elements);
  return random_profiles(counts, transmissions, seed);
}

ProfileSet random_profiles(const Scenario& s) {
  std::vector<std::size_t> counts;
  for (const auto& r : s.ris_list) counts.push_back(r.element_count());
  return random_profiles(counts, static_cast<std::size_t>(s.waveform.n_transmissions), s.seed);
}

LinkModel::LinkModel(const Scenario& s, const ProfileSet& profiles)
    : waveform(s.waveform),
      bs(s.bs),
      wavelength(s.waveform.wavelength()),
      symbol_energy(s.waveform.symbol_energy()) {
  if (profiles.schedules.size() != s.ris_list.size())
    throw NumericalError("profile set does not match the RIS list");
  const double kappa = kTwoPi / wavelength;
  ris.reserve(s.ris_list.size());
  for (std::size_t k = 0; k < s.ris_list.size(); ++k) {
    RisLink link;
    link.descriptor = s.ris_list[k];
    link.offsets = element_offsets(link.descriptor);
    link.schedule = profiles.schedules[k];
    link.profile_columns = link.schedule.coefficients.transpose();
    if (link.schedule.elements() != static_cast<std::size_t>(link.offsets.rows()) ||
        link.schedule.transmissions() != static_cast<std::size_t>(s.waveform.n_transmissions))
      throw NumericalError("profile schedule shape does not match RIS " + std::to_string(k + 1));
    const Vec3 r = s.bs - link.descriptor.center;
    const double d0 = r.norm();
    link.bs_steering.resize(link.offsets.rows());
    for (Eigen::Index m = 0; m < link.offsets.rows(); ++m) {
      const double dm = (r - link.offsets.row(m).transpose()).norm();
      if (dm == 0.0) throw GeometryError("singular geometry: BS coincides with a RIS element");
      link.bs_steering[m] = std::polar(1.0, -kappa * (dm - d0));
    }
    ris.push_back(std::move(link));
  }
}

ChannelState channel_state(const Scenario& s, const PathGains& gains) {
  ChannelState st;
  st.ue = s.ue;
  st.los = gains.los_present;
  st.gains = gains.alpha;
  st.delays.resize(s.ris_list.size() + 1);
  for (std::size_t k = 0; k <= s.ris_list.size(); ++k) st.delays[k] = path_delay(s, k);
  for (const auto& r : s.ris_list) st.aod.push_back(aod_angles(r, s.ue));
  return st;
}

Eigen::VectorXcd ris_response(const LinkModel& link, const ChannelState& state, Regime regime,
                              std::size_t k) {
  const RisLink& r = link.ris.at(k);
  const Eigen::Index m_count = r.offsets.rows();
  Eigen::VectorXcd a(m_count);
  if (regime == Regime::NearField) {
    const double kappa = kTwoPi / link.wavelength;
    const Vec3 rel = state.ue - r.descriptor.center;
    const double dk = rel.norm();
    for (Eigen::Index m = 0; m < m_count; ++m) {
      const double dm = (rel - r.offsets.row(m).transpose()).norm();
      if (dm == 0.0) throw GeometryError("singular geometry: UE coincides with a RIS element");
      a[m] = std::polar(1.0, -kappa * (dm - dk));
    }
  } else {
    const Eigen::VectorXd phase = r.offsets * wavevector(state.aod.at(k), link.wavelength);
    for (Eigen::Index m = 0; m < m_count; ++m) a[m] = std::polar(1.0, -phase[m]);
  }
  return a;
}

Eigen::VectorXcd cascaded_response(const LinkModel& link, const ChannelState& state,
                                   Regime regime, std::size_t k) {
  return ris_response(link, state, regime, k).cwiseProduct(link.ris.at(k).bs_steering);
}

cplx path_coefficient(const LinkModel& link, const ChannelState& state, Regime regime,
                      std::size_t k, std::size_t t) {
  if (k == 0) return state.los ? state.gains.at(0) : cplx(0.0, 0.0);
  const RisLink& r = link.ris.at(k - 1);
  if (!r.schedule.active.at(t)) return {0.0, 0.0};
  const Eigen::VectorXcd b = cascaded_response(link, state, regime, k - 1);
  const cplx proj = b.cwiseProduct(r.profile_columns.col(static_cast<Eigen::Index>(t))).sum();
  return state.gains.at(k) * proj;
}

Eigen::VectorXcd delay_steering(double tau, double subcarrier_spacing, int n_subcarriers) {
  Eigen::VectorXcd d(n_subcarriers);
  for (int n = 0; n < n_subcarriers; ++n) d[n] = std::polar(1.0, -kTwoPi * tau * n * subcarrier_spacing);
  return d;
}

Eigen::VectorXcd observe(const LinkModel& link, const ChannelState& state, Regime regime,
                         std::size_t t) {
  const WaveformParams& w = link.waveform;
  const Eigen::VectorXcd s = w.pilot_vector();
  Eigen::VectorXcd mu = Eigen::VectorXcd::Zero(w.n_subcarriers);
  for (std::size_t k = state.los ? 0 : 1; k <= link.ris.size(); ++k) {
    const cplx b = path_coefficient(link, state, regime, k, t);
    if (b == cplx(0.0, 0.0)) continue;
    mu += b * s.cwiseProduct(delay_steering(state.delays[k], w.subcarrier_spacing, w.n_subcarriers));
  }
  return mu;
}

cplx beta(const Scenario& scenario, const ProfileSet& profiles, const PathGains& gains,
          Regime regime, std::size_t k, std::size_t t) {
  const LinkModel link(scenario, profiles);
  return path_coefficient(link, channel_state(scenario, gains), regime, k, t);
}

Eigen::VectorXcd noise_free_observation(const Scenario& scenario, const ProfileSet& profiles,
                                        const PathGains& gains, Regime regime, std::size_t t) {
  const LinkModel link(scenario, profiles);
  return observe(link, channel_state(scenario, gains), regime, t);
}

std::string schedule_csv(const PhaseProfileSchedule& sched) {
  std::string out = "t,m,real,imag\n";
  char buf[96];
  for (Eigen::Index t = 0; t < sched.coefficients.rows(); ++t) {
    for (Eigen::Index m = 0; m < sched.coefficients.cols(); ++m) {
      const cplx c = sched.coefficients(t, m);
      std::snprintf(buf, sizeof buf, "%ld,%ld,%.17g,%.17g\n", static_cast<long>(t),
                    static_cast<long>(m), c.real(), c.imag());
      out += buf;
    }
  }
  return out;
}

}  // namespace risloc
