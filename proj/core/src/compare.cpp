#include "layerwave/compare.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "layerwave/error.hpp"
#include "layerwave/spectral.hpp"

namespace layerwave {

std::vector<double> trig_resample(std::span<const double> values, double length,
                                  double x0, std::size_t n_out, double x0_out) {
  const std::size_t n = values.size();
  if (n < 2 || n_out < 2) throw InvalidParameter("trig_resample: too few samples");
  RealFFT in(n), out(n_out);
  std::vector<Complex> s(in.spectral_size());
  in.forward(values, s);
  std::vector<Complex> t(out.spectral_size(), 0.0);
  const double scale = static_cast<double>(n_out) / static_cast<double>(n);
  const double shift = x0_out - x0;
  const std::size_t kmax = std::min(s.size(), t.size());
  const bool in_even = n % 2 == 0, out_even = n_out % 2 == 0;
  for (std::size_t k = 0; k < kmax; ++k) {
    Complex c = s[k] * scale;
    const bool in_nyq = in_even && k == n / 2;
    const bool out_nyq = out_even && k == n_out / 2;
    // An input Nyquist term splits evenly between +k and -k.
    if (in_nyq && !out_nyq) c *= 0.5;
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(k) * shift / length;
    c *= std::polar(1.0, ang);
    // On the output Nyquist mode +k and -k alias onto one real coefficient.
    if (out_nyq && !in_nyq) c = Complex(2.0 * c.real(), 0.0);
    t[k] = c;
  }
  std::vector<double> r(n_out);
  out.inverse(t, r);
  return r;
}

ComparisonReport compare_solutions(const Profile& ref,
                                   std::span<const OrderedProfile> hom,
                                   double length) {
  if (ref.x.size() < 2) throw InvalidParameter("compare_solutions: empty reference");
  const double dx_ref = length / static_cast<double>(ref.x.size());
  ComparisonReport rep;
  double norm2 = 0, norminf = 0;
  for (double v : ref.p) {
    norm2 += v * v;
    norminf = std::max(norminf, std::abs(v));
  }
  norm2 = std::sqrt(norm2);
  if (norm2 == 0) norm2 = 1;
  if (norminf == 0) norminf = 1;

  std::vector<OrderedProfile> sorted(hom.begin(), hom.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.order < b.order; });
  for (const auto& h : sorted) {
    if (h.profile.x.size() < 2) throw InvalidParameter("compare_solutions: empty profile");
    const double dx = length / static_cast<double>(h.profile.x.size());
    const double offset = h.profile.x.front() - ref.x.front();
    if (std::abs(offset) > std::max(dx, dx_ref) + 1e-12 * length) {
      throw InvalidParameter("compare_solutions: profile domains do not match");
    }
    std::vector<double> p = h.profile.p;
    if (h.profile.x.size() != ref.x.size() || std::abs(offset) > 1e-12 * length) {
      p = trig_resample(h.profile.p, length, h.profile.x.front(), ref.x.size(),
                        ref.x.front());
    }
    double e2 = 0, einf = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double d = p[i] - ref.p[i];
      e2 += d * d;
      einf = std::max(einf, std::abs(d));
    }
    rep.errors.push_back({h.order, std::sqrt(e2) / norm2, einf / norminf});
  }
  rep.monotone = true;
  for (std::size_t i = 1; i < rep.errors.size(); ++i) {
    if (!(rep.errors[i].rel_l2 < rep.errors[i - 1].rel_l2)) rep.monotone = false;
  }
  return rep;
}

AxisSpeedFit fit_axis_speeds(const WaveField& field, std::span<const double> p0,
                             double t, double cx0, double cy0) {
  const auto& g = field.grid;
  if (p0.size() != g.size()) throw InvalidParameter("fit_axis_speeds: size mismatch");
  RealFFT fft(g.nx, g.ny);
  std::vector<Complex> s0(fft.spectral_size());
  fft.forward(p0, s0);
  std::vector<Complex> target(fft.spectral_size());
  fft.forward(field.p, target);
  const std::size_t nxs = fft.nx_spectral();
  std::vector<double> kx2(s0.size()), ky2(s0.size()), weight(s0.size());
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < nxs; ++i) {
      const std::size_t k = j * nxs + i;
      const double kx = 2 * std::numbers::pi * static_cast<double>(i) / g.Lx;
      const double ky = 2 * std::numbers::pi * static_cast<double>(wave_index(j, g.ny)) / g.Ly;
      kx2[k] = kx * kx;
      ky2[k] = ky * ky;
      // Parseval weight of an r2c slot.
      weight[k] = (i == 0 || (g.nx % 2 == 0 && i == g.nx / 2)) ? 1.0 : 2.0;
    }
  }
  double tnorm = 0;
  for (std::size_t k = 0; k < s0.size(); ++k) tnorm += weight[k] * std::norm(target[k]);

  // Residual r_k = s0_k cos(w_k t) - target_k; Gauss-Newton on (c_x^2, c_y^2).
  auto residual = [&](double a, double b, std::vector<Complex>* r,
                      std::vector<Complex>* ja, std::vector<Complex>* jb) {
    double sum = 0;
    for (std::size_t k = 0; k < s0.size(); ++k) {
      const double w = std::sqrt(std::max(0.0, a * kx2[k] + b * ky2[k]));
      const Complex rk = s0[k] * std::cos(w * t) - target[k];
      sum += weight[k] * std::norm(rk);
      if (r) {
        (*r)[k] = rk;
        // d cos(w t)/d a = -sin(w t) t kx2 / (2 w)
        const double dfac = w > 0 ? -std::sin(w * t) * t / (2 * w) : -t * t / 2;
        (*ja)[k] = s0[k] * dfac * kx2[k];
        (*jb)[k] = s0[k] * dfac * ky2[k];
      }
    }
    return sum;
  };

  double a = cx0 * cx0, b = cy0 * cy0;
  std::vector<Complex> r(s0.size()), ja(s0.size()), jb(s0.size());
  AxisSpeedFit fit;
  double cost = residual(a, b, nullptr, nullptr, nullptr);
  for (int it = 0; it < 50; ++it) {
    residual(a, b, &r, &ja, &jb);
    double haa = 0, hab = 0, hbb = 0, ga = 0, gb = 0;
    for (std::size_t k = 0; k < s0.size(); ++k) {
      const double w = weight[k];
      haa += w * std::norm(ja[k]);
      hbb += w * std::norm(jb[k]);
      hab += w * (std::conj(ja[k]) * jb[k]).real();
      ga += w * (std::conj(ja[k]) * r[k]).real();
      gb += w * (std::conj(jb[k]) * r[k]).real();
    }
    const double det = haa * hbb - hab * hab;
    if (!(std::abs(det) > 0)) break;
    double da = -(hbb * ga - hab * gb) / det;
    double db = -(haa * gb - hab * ga) / det;
    // Backtrack until the misfit decreases.
    double step = 1.0, next = cost;
    for (int ls = 0; ls < 30; ++ls) {
      const double na = a + step * da, nb = b + step * db;
      if (na > 0 && nb > 0) {
        next = residual(na, nb, nullptr, nullptr, nullptr);
        if (next <= cost) break;
      }
      step *= 0.5;
    }
    fit.iterations = it + 1;
    if (!(next <= cost)) break;
    a += step * da;
    b += step * db;
    const bool converged = std::abs(step * da) < 1e-12 * a && std::abs(step * db) < 1e-12 * b;
    cost = next;
    if (converged) break;
  }
  fit.c_x = std::sqrt(a);
  fit.c_y = std::sqrt(b);
  fit.residual = tnorm > 0 ? std::sqrt(cost / tnorm) : 0.0;
  return fit;
}

}  // namespace layerwave
