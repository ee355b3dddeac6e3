#include "nmat/construct.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "nmat/core.hpp"
#include "nmat/detect.hpp"
#include "nmat/io.hpp"

namespace nmat {

SeededSource::SeededSource(std::uint64_t seed, double bound) : gen_(seed), bound_(bound) {
  if (!(bound > 0.0)) throw ContractViolation("magnitude bound must be positive");
}

double SeededSource::magnitude() {
  // 53-bit uniform in [0,1), mapped to (0, bound].
  const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  return bound_ * (1.0 - u);
}

ScriptedSource::ScriptedSource(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw ContractViolation("scripted source needs at least one value");
}

double ScriptedSource::magnitude() {
  const double v = values_[next_];
  next_ = (next_ + 1) % values_.size();
  return v;
}

SquareMatrix bordered(const SquareMatrix& a, const std::vector<double>& x,
                      const std::vector<double>& y, double corner) {
  const int n = a.order();
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
    throw ContractViolation("border vectors must have the matrix order");
  SquareMatrix u(n + 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) u(i, j) = a(i, j);
    u(i, n) = x[static_cast<std::size_t>(i)];
    u(n, i) = y[static_cast<std::size_t>(i)];
  }
  u(n, n) = corner;
  return u;
}

namespace {

void check_signs(const std::vector<double>& v, const char* name, BorderSigns signs,
                 const Tolerance& tol) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    const bool want_positive = static_cast<int>(i) < signs.positive_prefix;
    const Sign sg = sign_of(v[i], 1.0, tol.eps);
    if (sg == Sign::DeadZone || (sg == Sign::Positive) != want_positive) {
      std::ostringstream os;
      os << name << "[" << i + 1 << "] = " << v[i] << " violates the required sign pattern ("
         << (want_positive ? "positive" : "negative") << " expected)";
      throw SignPatternError(os.str());
    }
  }
}

}  // namespace

SquareMatrix append_border(const SquareMatrix& a, const std::vector<double>& x,
                           const std::vector<double>& y, double corner, BorderSigns signs,
                           const Tolerance& tol) {
  const int n = a.order();
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
    throw ContractViolation("border vectors must have the matrix order");
  if (signs.positive_prefix < 0 || signs.positive_prefix > n)
    throw ContractViolation("positive prefix out of range");
  if (!(corner < -tol.eps)) {
    std::ostringstream os;
    os << "corner entry a = " << corner << " must be negative";
    throw SignPatternError(os.str());
  }
  check_signs(x, "x", signs, tol);
  check_signs(y, "y", signs, tol);

  const SquareMatrix lift = rank_one_update(a, x, y, -1.0 / corner);
  const DetectReport rep = is_p_matrix(lift, tol);
  if (rep.verdict != Tri::Yes) {
    std::string why = rep.fail_witness ? *rep.fail_witness : "P-test did not pass";
    throw InfeasibleBorder("A - (1/a) x y^T is not a P-matrix: " + why);
  }
  return bordered(a, x, y, corner);
}

BorderStep find_feasible_border(const SquareMatrix& a, BorderSigns signs,
                                const ConstructionParams& params, ChoiceSource& source) {
  const int n = a.order();
  if (signs.positive_prefix < 0 || signs.positive_prefix > n)
    throw ContractViolation("positive prefix out of range");

  std::string last_witness = "no candidate tried";
  const int attempts = 1 + params.resample_budget;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    std::vector<double> x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      x[static_cast<std::size_t>(i)] =
          (i < signs.positive_prefix ? 1.0 : -1.0) * source.magnitude();
    for (int i = 0; i < n; ++i)
      y[static_cast<std::size_t>(i)] =
          (i < signs.positive_prefix ? 1.0 : -1.0) * source.magnitude();

    double t = 1.0;
    for (int d = 0; d <= params.max_doublings; ++d, t *= 2.0) {
      if (!(-1.0 / t < -params.tol.eps)) break;  // corner would land in the dead zone
      const SquareMatrix lift = rank_one_update(a, x, y, t);
      const DetectReport rep = is_p_matrix(lift, params.tol);
      if (rep.verdict == Tri::Yes) {
        BorderStep step;
        step.x = std::move(x);
        step.y = std::move(y);
        step.t = t;
        step.a = -1.0 / t;
        step.certified = true;
        return step;
      }
      if (rep.fail_witness) last_witness = *rep.fail_witness;
    }
  }
  throw ConstructionStuck("no feasible border after " + std::to_string(attempts) +
                          " samples; last failure: " + last_witness);
}

namespace {

void certify_second_category(const SquareMatrix& a, const Tolerance& tol) {
  const DetectReport rep = is_n_matrix(a, tol);
  if (rep.verdict != Tri::Yes)
    throw ConstructionStuck("constructed matrix failed the N-test: " +
                            rep.fail_witness.value_or("(no witness)"));
  if (entry_category(a, tol) != std::optional<int>(2))
    throw ConstructionStuck("constructed matrix is not entrywise negative");
}

void certify_first_category(const SquareMatrix& a, int k, const Tolerance& tol) {
  const DetectReport rep = is_n_matrix(a, tol);
  if (rep.verdict != Tri::Yes)
    throw ConstructionStuck("constructed matrix failed the N-test: " +
                            rep.fail_witness.value_or("(no witness)"));
  if (entry_category(a, tol) != std::optional<int>(1))
    throw ConstructionStuck("constructed matrix has no positive entry");
  const SignPartition part = sign_partition(a, tol);
  if (part.status != SignPartition::Status::Found || part.s->size() != k)
    throw ConstructionStuck("constructed matrix does not carry the expected block sign split");
}

}  // namespace

ConstructionTrace ncon2(const ConstructionParams& params, ChoiceSource& source) {
  if (params.category != 2) throw ContractViolation("ncon2 requires category 2");
  if (params.n < 1) throw ContractViolation("target order must be >= 1");

  const SquareMatrix base(1, {-source.magnitude()});
  ConstructionTrace trace{base, {}, base};
  for (int i = 1; i < params.n; ++i) {
    BorderStep step = find_feasible_border(trace.result, BorderSigns::all_negative(), params, source);
    trace.result = bordered(trace.result, step.x, step.y, step.a);
    trace.steps.push_back(std::move(step));
  }
  certify_second_category(trace.result, params.tol);
  return trace;
}

ConstructionTrace ncon2(const ConstructionParams& params) {
  SeededSource source(params.seed, params.magnitude);
  return ncon2(params, source);
}

ConstructionTrace ncon1(const ConstructionParams& params, ChoiceSource& source) {
  if (params.category != 1) throw ContractViolation("ncon1 requires category 1");
  if (params.n < 2) throw ContractViolation("first-category construction needs n >= 2");
  if (params.k < 1 || params.k >= params.n)
    throw ContractViolation("first-block size k must satisfy 1 <= k < n");

  ConstructionParams block = params;
  block.n = params.k;
  block.category = 2;
  const SquareMatrix base = ncon2(block, source).result;

  ConstructionTrace trace{base, {}, base};
  for (int i = params.k; i < params.n; ++i) {
    BorderStep step =
        find_feasible_border(trace.result, BorderSigns::first_category(params.k), params, source);
    trace.result = bordered(trace.result, step.x, step.y, step.a);
    trace.steps.push_back(std::move(step));
  }
  certify_first_category(trace.result, params.k, params.tol);
  return trace;
}

ConstructionTrace ncon1(const ConstructionParams& params) {
  SeededSource source(params.seed, params.magnitude);
  return ncon1(params, source);
}

std::string serialize(const ConstructionTrace& trace) {
  std::string out = write_matrix(trace.base);
  char buf[64];
  auto append_vec = [&](const std::vector<double>& v) {
    out += '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ',';
      std::snprintf(buf, sizeof buf, "%.17g", v[i]);
      out += buf;
    }
    out += ']';
  };
  int i = 1;
  for (const auto& step : trace.steps) {
    std::snprintf(buf, sizeof buf, "step %d: a=%.17g x=", i++, step.a);
    out += buf;
    append_vec(step.x);
    out += " y=";
    append_vec(step.y);
    std::snprintf(buf, sizeof buf, " t=%.17g\n", step.t);
    out += buf;
  }
  out += write_matrix(trace.result);
  return out;
}

}  // namespace nmat
