#include "wrinkle/audit.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>

namespace wrinkle {

bool AuditReport::all_pass() const {
  return std::all_of(summary.begin(), summary.end(), [](const auto& kv) { return kv.second.failures == 0; });
}

std::vector<AuditRow> AuditReport::failures() const {
  std::vector<AuditRow> out;
  std::copy_if(rows.begin(), rows.end(), std::back_inserter(out), [](const AuditRow& r) { return !r.pass; });
  return out;
}

double determinant_condition_margin(const MaterialModel& model, double l1) {
  const double w = natural_width(model, l1);
  const Eigen::Matrix2d h = model.hessian(l1, w);
  const Eigen::Vector2d g = model.gradient(l1, w);
  return h.determinant() * (l1 - w) - h(0, 1) * g(0);
}

namespace {

std::vector<double> log_space(double a, double b, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  if (n == 1) {
    out[0] = a;
    return out;
  }
  const double la = std::log(a), lb = std::log(b);
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = std::exp(la + (lb - la) * i / (n - 1));
  return out;
}

constexpr double kFdRelTol = 1e-6;

class Recorder {
public:
  explicit Recorder(AuditReport& report) : report_(report) {}

  void add(double l1, double l2, const char* check, double margin, bool pass) {
    report_.rows.push_back({l1, l2, check, margin, pass});
    CheckSummary& s = report_.summary[check];
    if (s.samples == 0 || margin < s.worst_margin) {
      s.worst_margin = margin;
      s.worst_l1 = l1;
      s.worst_l2 = l2;
    }
    ++s.samples;
    if (!pass) ++s.failures;
  }

private:
  AuditReport& report_;
};

double gradient_fd_error(const MaterialModel& m, double a, double b) {
  const double ha = 1e-5 * std::max(1.0, std::abs(a));
  const double hb = 1e-5 * std::max(1.0, std::abs(b));
  const Eigen::Vector2d fd((m.value(a + ha, b) - m.value(a - ha, b)) / (2 * ha),
                           (m.value(a, b + hb) - m.value(a, b - hb)) / (2 * hb));
  const Eigen::Vector2d g = m.gradient(a, b);
  return (fd - g).norm() / std::max(1.0, g.norm());
}

double hessian_fd_error(const MaterialModel& m, double a, double b) {
  const double ha = 1e-5 * std::max(1.0, std::abs(a));
  const double hb = 1e-5 * std::max(1.0, std::abs(b));
  Eigen::Matrix2d fd;
  fd.col(0) = (m.gradient(a + ha, b) - m.gradient(a - ha, b)) / (2 * ha);
  fd.col(1) = (m.gradient(a, b + hb) - m.gradient(a, b - hb)) / (2 * hb);
  const Eigen::Matrix2d h = m.hessian(a, b);
  return (fd - h).norm() / std::max(1.0, h.norm());
}

}  // namespace

AuditReport audit_hypotheses(const MaterialModel& model, const AuditGrid& grid) {
  AuditReport report;
  report.model = model.name();
  Recorder rec(report);

  const double p = model.growth_exponent();
  double c0 = std::numeric_limits<double>::infinity();

  for (double l1 : log_space(grid.l1_min, grid.l_max, grid.n1)) {
    const double w = natural_width(model, l1);

    // Width monotonicity by central differences (one-sided at the left end).
    const double dl = 1e-5 * l1;
    const double dw = (l1 - dl > 1.0)
                          ? (natural_width(model, l1 + dl) - natural_width(model, l1 - dl)) / (2 * dl)
                          : (natural_width(model, l1 + dl) - w) / dl;
    rec.add(l1, w, kCheckWidthMonotone, -dw, dw <= 1e-9);

    const Eigen::Matrix2d hw = model.hessian(l1, w);
    const double wslope = -hw(0, 1) / hw(1, 1);
    const double uni = hw(0, 0) + hw(0, 1) * wslope;
    rec.add(l1, w, kCheckUniaxialMonotone, uni, uni > 0.0);

    const double det = determinant_condition_margin(model, l1);
    rec.add(l1, w, kCheckDeterminant, det, det > 0.0);

    for (double l2 : log_space(w, grid.l_max, grid.n2)) {
      const double f = model.value(l1, l2);
      rec.add(l1, l2, kCheckNonNegative, f, f >= 0.0);

      const Eigen::Matrix2d h = model.hessian(l1, l2);
      const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(h, Eigen::EigenvaluesOnly)
                                 .eigenvalues()(0);
      rec.add(l1, l2, kCheckHessianPD, min_eig, min_eig > 0.0);

      const double ge = gradient_fd_error(model, l1, l2);
      rec.add(l1, l2, kCheckGradientFD, kFdRelTol - ge, ge <= kFdRelTol);
      const double he = hessian_fd_error(model, l1, l2);
      rec.add(l1, l2, kCheckHessianFD, kFdRelTol - he, he <= kFdRelTol);

      const Eigen::Vector2d g = model.gradient(l1, l2);
      const double ordered = (g(0) - g(1)) * (l1 - l2);
      rec.add(l1, l2, kCheckOrderedForce, ordered, ordered >= -1e-12);

      rec.add(l1, l2, kCheckCrossPartial, h(0, 1), h(0, 1) >= 0.0);

      c0 = std::min(c0, (f + 3.0 * model.stiffness()) / std::pow(l1 * l1 + l2 * l2, 0.5 * p));
    }
  }

  // Growth constants: c0 from the sampled ratio with offset 3C, then the
  // smallest c1 that makes the bound hold on every sample.
  report.growth_c0 = std::isfinite(c0) ? c0 : 0.0;
  double c1 = 0.0;
  for (double l1 : log_space(grid.l1_min, grid.l_max, grid.n1)) {
    const double w = natural_width(model, l1);
    for (double l2 : log_space(w, grid.l_max, std::max(2, grid.n2 / 10))) {
      c1 = std::max(c1, report.growth_c0 * std::pow(l1 * l1 + l2 * l2, 0.5 * p) - model.value(l1, l2));
    }
  }
  report.growth_c1 = c1;

  if (grid.random_samples > 0) {
    std::mt19937_64 rng(grid.seed);
    std::uniform_real_distribution<double> dist(0.2, grid.l_max);
    auto base = std::shared_ptr<const MaterialModel>(&model, [](const MaterialModel*) {});
    const RelaxedDensity rel(base);
    for (int i = 0; i < grid.random_samples; ++i) {
      const double a = dist(rng), b = dist(rng);
      const double gap = model.value(a, b) - rel.value(a, b);
      rec.add(a, b, kCheckRelaxedBelow, gap, gap >= -1e-12);
    }
  }
  return report;
}

void write_audit_csv(std::ostream& os, const AuditReport& report, bool failures_only) {
  os << "l1,l2,check,margin,pass\n";
  os.precision(12);
  for (const AuditRow& r : report.rows) {
    if (failures_only && r.pass) continue;
    os << r.l1 << ',' << r.l2 << ',' << r.check << ',' << r.margin << ',' << (r.pass ? 1 : 0) << '\n';
  }
}

}  // namespace wrinkle
