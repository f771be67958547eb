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

// Acceptance checks. One PASS/FAIL line per criterion; exit status is the
// number of failed criteria. Tolerances are fixed here, not configurable.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "oracle/reference_model.hpp"
#include "risloc/bounds.hpp"
#include "risloc/config.hpp"
#include "risloc/fim_ff.hpp"
#include "risloc/fim_nf.hpp"
#include "risloc/geometry.hpp"
#include "risloc/sweep.hpp"
#include "support/generators.hpp"

using risloc::LosMode;
using risloc::Regime;
using risloc::Scenario;
using risloc::Vec3;

namespace {

constexpr double kReferenceTolerance = 0.25;
constexpr double kGapAt6m = 0.10;
constexpr double kGapAt10m = 0.05;
constexpr double kDominanceSlack = 1e-6;
constexpr double kShadowRatioLo = 3.0;
constexpr double kShadowRatioHi = 30.0;
constexpr double kDerivativeTolerance = 1e-5;
constexpr double kHessianTolerance = 1e-3;
constexpr double kPsdTolerance = 1e-9;
constexpr double kRigidTolerance = 1e-9;
constexpr int kDerivativeScenarios = 25;
constexpr int kPsdSeeds = 100;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Median row of (distance, regime, M, los) from a line sweep.
double median_peb(const risloc::SweepTable& t, double distance, Regime reg, std::size_t elements, bool los) {
  for (const auto& r : t.rows) {
    if (!r.seed && r.regime == reg && r.elements == elements && r.los == los &&
        std::abs(r.distance - distance) < 1e-9)
      return r.peb;
  }
  return std::nan("");
}

risloc::SweepTable line_sweep(const char* preset, std::vector<double> distances, std::vector<int> sides,
                              std::vector<Regime> regimes, std::vector<LosMode> los) {
  risloc::SweepConfig c = risloc::load_preset(preset);
  c.line.distances = std::move(distances);
  c.elements_per_side = std::move(sides);
  c.regimes = std::move(regimes);
  c.los_modes = std::move(los);
  return risloc::run_sweep(c);
}

bool within(double value, double target, double rel) {
  return std::isfinite(value) && std::abs(value - target) <= rel * target;
}

Outcome reference_values() {
  Outcome o;
  const auto t32 = line_sweep("paper-fig4", {1, 10, 20}, {32}, {Regime::NearField, Regime::FarField},
                              {LosMode::ForcedLoS});
  const auto t128 = line_sweep("paper-fig4", {30}, {128}, {Regime::NearField}, {LosMode::ForcedLoS});
  struct Ref { const risloc::SweepTable* t; double d; Regime reg; std::size_t m; double target; };
  for (const Ref& r : {Ref{&t32, 1, Regime::NearField, 1024, 2.072e-3}, Ref{&t32, 10, Regime::NearField, 1024, 0.1374},
                       Ref{&t32, 20, Regime::FarField, 1024, 1.487}, Ref{&t128, 30, Regime::NearField, 16384, 1.244}}) {
    const double v = median_peb(*r.t, r.d, r.reg, r.m, true);
    o.check(within(v, r.target, kReferenceTolerance),
            fmt("M=%zu %s d=%g m: %.4g vs %.4g", r.m, risloc::to_string(r.reg), r.d, v, r.target));
  }
  return o;
}

Outcome nlos_values() {
  Outcome o;
  const auto t = line_sweep("paper-fig5", {4, 10}, {32, 64}, {Regime::NearField}, {LosMode::ForcedNLoS});
  const double a = median_peb(t, 10, Regime::NearField, 1024, false);
  const double b = median_peb(t, 4, Regime::NearField, 4096, false);
  o.check(within(a, 8.24, kReferenceTolerance), fmt("M=1024 NLoS nf d=10 m: %.4g vs 8.24", a));
  o.check(within(b, 6.59e-2, kReferenceTolerance), fmt("M=4096 NLoS nf d=4 m: %.4g vs 0.0659", b));
  return o;
}

Outcome near_far_convergence() {
  Outcome o;
  const auto t = line_sweep("paper-fig4", {6, 10}, {32}, {Regime::NearField, Regime::FarField}, {LosMode::ForcedLoS});
  for (auto [d, limit] : {std::pair{6.0, kGapAt6m}, std::pair{10.0, kGapAt10m}}) {
    const double nf = median_peb(t, d, Regime::NearField, 1024, true);
    const double ff = median_peb(t, d, Regime::FarField, 1024, true);
    const double gap = std::abs(nf - ff) / ff;
    o.check(gap < limit, fmt("d=%g m: gap %.3g (limit %.2g)", d, gap, limit));
  }
  return o;
}

Outcome identifiability() {
  Outcome o;
  auto scenario = [](std::size_t n_ris, LosMode los) {
    Scenario s;
    s.ue = Vec3(1.5, 2, 0.2);
    s.los_mode = los;
    s.waveform.n_subcarriers = 256;
    const Vec3 centers[2] = {Vec3(0, 0, 0), Vec3(5, 0, 0)};
    for (std::size_t k = 0; k < n_ris; ++k) {
      risloc::RisDescriptor r;
      r.elements_u = r.elements_v = 8;
      r.spacing = 0.5 * s.waveform.wavelength();
      r.center = centers[k];
      s.ris_list.push_back(r);
    }
    return s;
  };
  for (auto reg : {Regime::NearField, Regime::FarField}) {
    const char* name = risloc::to_string(reg);
    for (auto los : {LosMode::ForcedLoS, LosMode::ForcedNLoS}) {
      const auto r = risloc::identifiability_report(scenario(0, los), reg);
      o.check(!r.identifiable && std::isinf(r.peb),
              fmt("K=0 %s %s: singular", los == LosMode::ForcedLoS ? "LoS" : "NLoS", name));
    }
    const auto r = risloc::identifiability_report(scenario(1, LosMode::ForcedLoS), reg);
    o.check(std::isfinite(r.peb), fmt("K=1 LoS %s: PEB %.3g finite", name, r.peb));
  }
  const auto nf1 = risloc::identifiability_report(scenario(1, LosMode::ForcedNLoS), Regime::NearField);
  o.check(std::isfinite(nf1.peb), fmt("K=1 NLoS nf: PEB %.3g finite", nf1.peb));
  const auto ff1 = risloc::identifiability_report(scenario(1, LosMode::ForcedNLoS), Regime::FarField);
  o.check(std::isinf(ff1.peb), "K=1 NLoS ff: PEB infinite");
  const auto ff2 = risloc::identifiability_report(scenario(2, LosMode::ForcedNLoS), Regime::FarField);
  o.check(std::isfinite(ff2.peb), fmt("K=2 NLoS ff: PEB %.3g finite", ff2.peb));
  return o;
}

Outcome heatmap() {
  Outcome o;
  risloc::SweepConfig c = risloc::load_preset("paper-fig3");
  c.grid.x_min = c.grid.y_min = 0.5;
  c.grid.x_max = c.grid.y_max = 5.0;
  c.grid.resolution = 0.25;
  const auto table = risloc::run_sweep(c);
  const auto xs = c.grid.xs(), ys = c.grid.ys();

  // (point, seed or median) -> peb per regime
  std::map<std::pair<std::size_t, long long>, std::pair<double, double>> peb;
  std::map<std::size_t, Vec3> where;
  for (const auto& r : table.rows) {
    auto& e = peb[{r.point, r.seed ? static_cast<long long>(*r.seed) : -1}];
    (r.regime == Regime::NearField ? e.first : e.second) = r.peb;
    where[r.point] = r.position;
  }
  auto shadowed = [&](std::size_t point) {
    return risloc::los_blocked(c.scenario.bs, where.at(point), c.scenario.obstacles);
  };

  int dominance_bad = 0, dominance_total = 0, shadow_bad = 0, nf_bad = 0, cells = 0;
  double worst_excess = 0.0;
  for (const auto& [key, v] : peb) {
    const auto [nf, ff] = v;
    if (std::isnan(nf) && std::isnan(ff)) continue;  // BS cell
    if (key.second < 0) ++cells;
    if (!std::isfinite(nf)) ++nf_bad;
    const bool shadow = shadowed(key.first);
    if (shadow != std::isinf(ff)) ++shadow_bad;
    if (!shadow && key.second >= 0) {
      ++dominance_total;
      if (!(nf <= ff * (1 + kDominanceSlack))) {
        ++dominance_bad;
        worst_excess = std::max(worst_excess, nf / ff - 1);
      }
    }
  }
  o.check(dominance_bad == 0, fmt("NF <= FF(1+1e-6) on LoS cells: %d of %d (cell, seed) pairs violate, worst excess %.3g",
                                  dominance_bad, dominance_total, worst_excess));
  o.check(shadow_bad == 0, fmt("FF infinite exactly on shadowed cells: %d mismatches", shadow_bad));
  o.check(nf_bad == 0, fmt("NF finite on all %d cells: %d non-finite", cells, nf_bad));

  // NLoS cell against each 4-neighbour LoS cell, on the seed medians.
  const std::size_t nx = xs.size(), ny = ys.size();
  std::vector<double> ratios;
  for (std::size_t iy = 0; iy < ny; ++iy) {
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const std::size_t p = iy * nx + ix;
      if (!where.count(p) || !shadowed(p)) continue;
      const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
      for (int n = 0; n < 4; ++n) {
        const long jx = static_cast<long>(ix) + dx[n], jy = static_cast<long>(iy) + dy[n];
        if (jx < 0 || jy < 0 || jx >= static_cast<long>(nx) || jy >= static_cast<long>(ny)) continue;
        const std::size_t q = static_cast<std::size_t>(jy) * nx + static_cast<std::size_t>(jx);
        if (shadowed(q)) continue;
        const double a = peb.at({p, -1}).first, b = peb.at({q, -1}).first;
        if (std::isfinite(a) && std::isfinite(b)) ratios.push_back(a / b);
      }
    }
  }
  std::sort(ratios.begin(), ratios.end());
  const double med = ratios.empty() ? std::nan("") : ratios[ratios.size() / 2];
  o.check(med >= kShadowRatioLo && med <= kShadowRatioHi,
          fmt("shadow degradation, median over %zu edges: %.3g (range %.3g..%.3g)", ratios.size(), med,
              ratios.empty() ? 0.0 : ratios.front(), ratios.empty() ? 0.0 : ratios.back()));
  return o;
}

// Entrywise Jacobian error, each row on the scale of its reference row.
double jacobian_error(const Eigen::MatrixXd& an, const Eigen::MatrixXd& fd) {
  double worst = 0.0;
  for (Eigen::Index r = 0; r < fd.rows(); ++r) {
    const double scale = fd.row(r).norm();
    const double err = (an.row(r) - fd.row(r)).norm();
    worst = std::max(worst, scale > 0 ? err / scale : err);
  }
  return worst;
}

Eigen::MatrixXd fd_position_jacobian(const Scenario& s, const oracle::Problem& pb,
                                     const std::vector<std::string>& rows, Eigen::Index cols, bool far_field) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, cols);
  // gains are the trailing rows and map to themselves
  J.bottomRightCorner(cols - 4, cols - 4).setIdentity();
  oracle::Params pos{{"p_x", s.ue.x()}, {"p_y", s.ue.y()}, {"p_z", s.ue.z()}, {"clock_bias", s.clock_bias}};
  const char* names[4] = {"p_x", "p_y", "p_z", "clock_bias"};
  for (int c = 0; c < 4; ++c) {
    const double h = c == 3 ? 1e-12 : 1e-6;
    auto up = pos, dn = pos;
    up[names[c]] += h;
    dn[names[c]] -= h;
    const auto cu = oracle::channel_from_position(pb, up, far_field);
    const auto cd = oracle::channel_from_position(pb, dn, far_field);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!cu.count(rows[r])) continue;
      J(static_cast<Eigen::Index>(r), c) = (cu.at(rows[r]) - cd.at(rows[r])) / (up[names[c]] - dn[names[c]]);
    }
  }
  return J;
}

Outcome derivatives() {
  Outcome o;
  std::mt19937_64 g(2024);
  std::map<std::string, double> worst;
  auto note = [&](const std::string& block, double e) { worst[block] = std::max(worst[block], e); };
  for (int i = 0; i < kDerivativeScenarios; ++i) {
    testgen::SmallOptions so;
    so.n_ris = 1 + i % 2;
    so.los = i % 3 != 2;
    const Scenario s = testgen::small_scenario(g, so);
    const auto p = risloc::random_profiles(s);
    const auto gains = risloc::friis_gains(s);
    const auto pb = oracle::make_problem(s, p);
    const auto th_nf = oracle::truth(pb, s, gains, oracle::Model::NearFieldChannel);
    const auto th_ff = oracle::truth(pb, s, gains, oracle::Model::FarFieldChannel);
    std::vector<std::string> angles;
    for (std::size_t k = 1; k <= so.n_ris; ++k) {
      angles.push_back("psi_az_" + std::to_string(k));
      angles.push_back("psi_el_" + std::to_string(k));
    }
    for (int t = 0; t < s.waveform.n_transmissions; ++t) {
      note("dmu/dp", oracle::relative_error(
                         risloc::dmu_dp(s, p, gains, t),
                         oracle::fd_jacobian(pb, th_nf, oracle::Model::NearFieldChannel, t, {"p_x", "p_y", "p_z"})));
      note("dmu/dangles", oracle::relative_error(risloc::dmu_dangles(s, p, gains, t),
                                                 oracle::fd_jacobian(pb, th_ff, oracle::Model::FarFieldChannel, t, angles)));
      for (std::size_t k = 0; k <= so.n_ris; ++k) {
        if (k == 0 && !so.los) continue;
        const std::string ks = std::to_string(k);
        for (auto [reg, model, th] : {std::tuple{Regime::NearField, oracle::Model::NearFieldChannel, &th_nf},
                                      std::tuple{Regime::FarField, oracle::Model::FarFieldChannel, &th_ff}}) {
          const auto fd = oracle::fd_jacobian(pb, *th, model, t, {"tau_" + ks});
          if (fd.norm() > 0) note("dmu/dtau", oracle::relative_error(risloc::dmu_dtau(s, p, gains, t, k, reg), fd));
        }
        const auto fd = oracle::fd_jacobian(pb, th_nf, oracle::Model::NearFieldChannel, t,
                                            {"alpha_" + ks + "_re", "alpha_" + ks + "_im"});
        if (fd.norm() > 0) note("dmu/dalpha", oracle::relative_error(risloc::dmu_dalpha(s, p, t, k), fd));
      }
    }
    const auto fim_nf = risloc::assemble_channel_fim_nf(s, p, gains);
    const Eigen::MatrixXd Jn = risloc::jacobian_nf(s);
    note("J_nf", jacobian_error(Jn, fd_position_jacobian(s, pb, fim_nf.param_labels, Jn.cols(), false)));
    const auto fim_ff = risloc::assemble_channel_fim_ff(s, p, gains);
    const Eigen::MatrixXd Jf = risloc::jacobian_ff(s);
    note("J_ff", jacobian_error(Jf, fd_position_jacobian(s, pb, fim_ff.param_labels, Jf.cols(), true)));
  }
  for (const auto& [block, e] : worst)
    o.check(e < kDerivativeTolerance, fmt("%-12s worst rel. error %.3g over %d scenarios", block.c_str(), e,
                                          kDerivativeScenarios));
  return o;
}

Outcome likelihood_hessian() {
  Outcome o;
  for (auto [reg, model, seed] : {std::tuple{Regime::NearField, oracle::Model::NearFieldChannel, 17},
                                  std::tuple{Regime::FarField, oracle::Model::FarFieldChannel, 19}}) {
    Scenario s = testgen::room_scenario(2, Vec3(0.3, 1.2, 0.2), static_cast<std::uint64_t>(seed));
    s.waveform.wavelength_override = 0.01;
    s.ris_list[0].spacing = 0.005;
    s.waveform.n_subcarriers = 8;
    s.waveform.n_transmissions = 3;
    s.waveform.subcarrier_spacing = 10e6;
    const auto p = risloc::random_profiles(s);
    const auto gains = risloc::friis_gains(s);
    const auto fim = reg == Regime::NearField ? risloc::assemble_channel_fim_nf(s, p, gains)
                                              : risloc::assemble_channel_fim_ff(s, p, gains);
    const auto pb = oracle::make_problem(s, p);
    const auto th = oracle::truth(pb, s, gains, model);
    std::vector<double> steps;
    for (Eigen::Index i = 0; i < fim.matrix.rows(); ++i) steps.push_back(1e-3 / std::sqrt(fim.matrix(i, i)));
    const auto H = oracle::nll_hessian(pb, th, model, fim.param_labels, steps);
    const double e = oracle::equilibrated_error(fim.matrix, H);
    o.check(e < kHessianTolerance, fmt("%s channel FIM vs expected NLL Hessian: rel. error %.3g", risloc::to_string(reg), e));
  }
  return o;
}

// Smallest eigenvalue over the largest on the diagonally equilibrated scale.
double psd_margin(const Eigen::MatrixXd& F) {
  Eigen::VectorXd d = F.diagonal().cwiseMax(0.0).cwiseSqrt();
  for (Eigen::Index i = 0; i < d.size(); ++i) d[i] = d[i] > 0 ? 1.0 / d[i] : 1.0;
  const Eigen::VectorXd ev =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(d.asDiagonal() * F * d.asDiagonal()).eigenvalues();
  return ev.minCoeff() / ev.maxCoeff();
}

Scenario transformed(const Scenario& s, const Eigen::Matrix3d& R, const Vec3& shift) {
  Scenario out = s;
  out.bs = R * s.bs + shift;
  out.ue = R * s.ue + shift;
  for (auto& r : out.ris_list) {
    r.center = R * r.center + shift;
    r.axis_u = R * r.axis_u;
    r.axis_v = R * r.axis_v;
  }
  return out;
}

Outcome invariants() {
  Outcome o;
  {
    std::mt19937_64 g(51);
    double asym = 0.0, margin = 1.0, below = 1.0;
    for (int i = 0; i < kPsdSeeds; ++i) {
      testgen::SmallOptions so;
      so.n_ris = 1 + i % 2;
      so.los = i % 3 != 0;
      const Scenario s = testgen::small_scenario(g, so);
      const auto p = risloc::random_profiles(s);
      const auto gains = risloc::friis_gains(s);
      const auto nf = risloc::positional_fim_nf(s, p, gains);
      for (const Eigen::MatrixXd& F :
           {risloc::assemble_channel_fim_nf(s, p, gains).matrix, risloc::assemble_channel_fim_ff(s, p, gains).matrix,
            nf.matrix, risloc::positional_fim_ff(s, p, gains).matrix}) {
        asym = std::max(asym, (F - F.transpose()).norm() / F.norm());
        margin = std::min(margin, psd_margin(F));
      }
      const auto e = risloc::efim_position_clock(nf);
      const Eigen::Vector4d d = nf.matrix.diagonal().head<4>().cwiseSqrt().cwiseInverse();
      const Eigen::Matrix4d S = d.asDiagonal() * (nf.matrix.topLeftCorner<4, 4>() - e.matrix) * d.asDiagonal();
      below = std::min(below, Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(S).eigenvalues().minCoeff());
    }
    o.check(asym <= kPsdTolerance && margin >= -kPsdTolerance,
            fmt("FIM symmetric PSD over %d seeds: asymmetry %.2g, min eig/max eig %.2g", kPsdSeeds, asym, margin));
    o.check(below >= -kPsdTolerance, fmt("EFIM below the position-clock block: min eig %.2g", below));
  }
  {
    std::mt19937_64 g(53);
    int violations = 0;
    for (int i = 0; i < 20; ++i) {
      testgen::SmallOptions so;
      so.n_ris = 3;
      so.los = i % 2 == 0;
      const Scenario s = testgen::small_scenario(g, so);
      const risloc::LinkModel link(s, risloc::random_profiles(s));
      const auto state = risloc::channel_state(s, risloc::friis_gains(s));
      for (auto reg : {Regime::NearField, Regime::FarField}) {
        std::vector<risloc::Efim> parts;
        if (so.los)
          parts.push_back(risloc::efim_position_clock(
              risloc::positional_fim(link, state, risloc::ChannelLayout::make(reg, {true, false, false, false}))));
        double last = risloc::kInfinity;
        for (std::size_t k = 1; k <= 3; ++k) {
          std::vector<bool> paths(4, false);
          paths[k] = true;
          parts.push_back(
              risloc::efim_position_clock(risloc::positional_fim(link, state, risloc::ChannelLayout::make(reg, paths))));
          const double v = risloc::peb(risloc::fuse_multi_ris(parts).matrix);
          if (v > last * (1 + 1e-12)) ++violations;
          last = v;
        }
      }
    }
    o.check(violations == 0, fmt("PEB non-increasing as RIS are added: %d violations", violations));
  }
  {
    // Preset-scale geometry at 28 GHz, random UE, random rigid motion.
    std::mt19937_64 g(54);
    double worst = 0.0, worst_cond = 0.0;
    int checked = 0;
    for (int i = 0; i < 20; ++i) {
      const Vec3 ue(testgen::uniform(g, -3, 3), testgen::uniform(g, 0.5, 6), testgen::uniform(g, -1, 1));
      Scenario s = testgen::room_scenario(8, ue, g(), i % 2 ? LosMode::ForcedNLoS : LosMode::ForcedLoS);
      s.waveform.n_subcarriers = 64;
      const Eigen::Matrix3d R = testgen::random_rotation(g);
      const Vec3 shift(testgen::uniform(g, -5, 5), testgen::uniform(g, -5, 5), testgen::uniform(g, -5, 5));
      const Scenario t = transformed(s, R, shift);
      for (auto reg : {Regime::NearField, Regime::FarField}) {
        if (reg == Regime::FarField && !testgen::clear_of_poles(t.ris_list[0].center, t.ue)) continue;
        const auto a = risloc::identifiability_report(s, reg);
        const auto b = risloc::identifiability_report(t, reg);
        if (a.identifiable != b.identifiable) {
          worst = risloc::kInfinity;
          continue;
        }
        if (!a.identifiable) continue;
        worst = std::max({worst, std::abs(b.peb - a.peb) / a.peb, std::abs(b.seb - a.seb) / a.seb});
        worst_cond = std::max(worst_cond, a.condition_number);
        ++checked;
      }
    }
    o.check(checked > 20 && worst < kRigidTolerance,
            fmt("PEB/SEB under rotation+translation: worst rel. change %.3g over %d cases (max cond %.2g)", worst,
                checked, worst_cond));
  }
  return o;
}

Outcome determinism() {
  Outcome o;
  for (const auto& name : risloc::preset_names()) {
    const auto c = risloc::load_preset(name);
    const std::string a = risloc::to_csv(risloc::run_sweep(c));
    const std::string b = risloc::to_csv(risloc::run_sweep(c));
    // a different worker count must not matter either
    const std::string s = risloc::to_csv(risloc::run_sweep(c, 1));
    o.check(a == b && a == s, fmt("%s: %zu bytes, repeated runs identical", name.c_str(), a.size()));
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"reference PEB values, LoS", reference_values},
      {"reference PEB values, NLoS", nlos_values},
      {"near/far convergence", near_far_convergence},
      {"identifiability matrix", identifiability},
      {"heatmap properties", heatmap},
      {"derivative oracle", derivatives},
      {"likelihood Hessian oracle", likelihood_hessian},
      {"structural invariants", invariants},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    std::printf("%s %zu %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first);
    for (const auto& n : o.notes) std::printf("       %s\n", n.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed;
}
