#include "gkcheck/group_model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace gkcheck {

namespace {

long double param(const NumericAssignment& v, const char* name) {
  auto it = v.find(name);
  if (it == v.end()) throw std::invalid_argument(std::string("model needs a value for parameter ") + name);
  return static_cast<long double>(it->second);
}

long double rate_minus_a(const NumericAssignment& v) { return -param(v, "a"); }
long double rate_half_a(const NumericAssignment& v) { return param(v, "a") / 2; }
long double rate_b(const NumericAssignment& v) { return param(v, "b"); }
long double rate_b2(const NumericAssignment& v) { return param(v, "b2"); }
long double rate_minus_one(const NumericAssignment&) { return -1.0L; }
long double rate_half(const NumericAssignment&) { return 0.5L; }

using Kind = GroupModel::Block::Kind;

Point random_point(std::mt19937& rng, int n) {
  std::uniform_real_distribution<long double> u(-1.0L, 1.0L);
  Point p(n);
  for (auto& x : p) x = u(rng);
  return p;
}

}  // namespace

GroupModel::GroupModel(std::string name, int dim, int t_index, std::vector<Block> blocks)
    : name_(std::move(name)), dim_(dim), t_index_(t_index), blocks_(std::move(blocks)), slot_(dim) {
  int next = t_index_ >= 0 ? 1 : 0;
  for (int i = 0; i < dim_; ++i) slot_[i] = i == t_index_ ? 0 : next++;
}

GroupModel GroupModel::abelian(int dim) { return GroupModel("abelian", dim, -1, {}); }

Point GroupModel::product(const Point& x, const Point& y, const NumericAssignment& v) const {
  Point z(dim_);
  for (int s = 0; s < dim_; ++s) z[s] = x[s] + y[s];
  if (t_index_ < 0) return z;
  const long double t = x[0];
  for (const auto& b : blocks_) {
    const long double r = b.rate(v);
    const int p = slot_[b.first];
    if (b.kind == Kind::scaling) {
      z[p] = std::exp(-r * t) * y[p] + x[p];
    } else {
      const int q = slot_[b.second];
      const long double c = std::cos(r * t), s = std::sin(r * t);
      z[p] = c * y[p] - s * y[q] + x[p];
      z[q] = s * y[p] + c * y[q] + x[q];
    }
  }
  return z;
}

std::vector<Point> GroupModel::coframe(const Point& x, const NumericAssignment& v) const {
  std::vector<Point> e(dim_, Point(dim_, 0.0L));
  for (int i = 0; i < dim_; ++i) e[i][slot_[i]] = 1.0L;
  if (t_index_ < 0) return e;
  const long double t = x[0];
  for (const auto& b : blocks_) {
    const long double r = b.rate(v);
    const int p = slot_[b.first];
    if (b.kind == Kind::scaling) {
      e[b.first][p] = std::exp(r * t);
    } else {
      const int q = slot_[b.second];
      const long double c = std::cos(r * t), s = std::sin(r * t);
      e[b.first][p] = c;
      e[b.first][q] = s;
      e[b.second][p] = -s;
      e[b.second][q] = c;
    }
  }
  return e;
}

bool is_model_name(const std::string& name) {
  return name == "s_ab" || name == "inoue4" || name == "rot3" || name == "l6" || name == "family" ||
         name == "abelian";
}

GroupModel make_model(const std::string& name, int dim) {
  auto need = [&](int expected) {
    if (dim != expected)
      throw std::invalid_argument("model " + name + " has dimension " + std::to_string(expected));
  };
  // Coordinates (t, x_1, ..): e^2 = dt and the other coframe forms follow the blocks.
  if (name == "s_ab") {
    need(6);
    return GroupModel(name, 6, 1,
                      {{Kind::scaling, 0, -1, rate_minus_a},
                       {Kind::scaling, 2, -1, rate_half_a},
                       {Kind::scaling, 3, -1, rate_half_a},
                       {Kind::rotation, 4, 5, rate_b}});
  }
  if (name == "inoue4") {
    need(4);
    return GroupModel(name, 4, 1,
                      {{Kind::scaling, 0, -1, rate_minus_one},
                       {Kind::scaling, 2, -1, rate_half},
                       {Kind::scaling, 3, -1, rate_half}});
  }
  if (name == "rot3") {
    need(3);
    return GroupModel(name, 3, 0, {{Kind::rotation, 1, 2, rate_b2}});
  }
  if (name == "l6") {
    need(6);
    std::vector<GroupModel::Block> blocks{{Kind::scaling, 0, -1, rate_minus_one}};
    for (int j = 2; j < 6; ++j) blocks.push_back({Kind::scaling, j, -1, rate_half});
    return GroupModel(name, 6, 1, blocks);
  }
  if (name == "family") {
    if (dim < 6 || dim % 2 != 0) throw std::invalid_argument("model family needs an even dimension >= 6");
    std::vector<GroupModel::Block> blocks{{Kind::scaling, 0, -1, rate_minus_a},
                                          {Kind::scaling, 2, -1, rate_half_a},
                                          {Kind::scaling, 3, -1, rate_half_a}};
    for (int k = 4; k < dim; k += 2) blocks.push_back({Kind::rotation, k, k + 1, rate_b});
    return GroupModel(name, dim, 1, blocks);
  }
  if (name == "abelian") return GroupModel::abelian(dim);
  throw std::invalid_argument("unknown group model " + name);
}

CoframeCheck numeric_coframe_check(const GroupModel& model, const StructureEquations& g,
                                   const NumericAssignment& values, int samples, long double step,
                                   std::uint32_t seed) {
  const int n = model.dim();
  if (g.dim() != n) throw DimensionMismatch("model and algebra have different dimensions");
  // D[i][p][q] for p < q: de^i = sum D e^p ^ e^q.
  std::vector<std::vector<std::vector<long double>>> d(
      n, std::vector<std::vector<long double>>(n, std::vector<long double>(n, 0.0L)));
  for (int i = 0; i < n; ++i)
    for (const auto& [idx, c] : g.differential(i).terms()) d[i][idx[0]][idx[1]] = c.evaluate(values);

  std::mt19937 rng(seed);
  CoframeCheck out;
  out.samples = samples;
  for (int s = 0; s < samples; ++s) {
    const Point x = random_point(rng, n);
    const auto e = model.coframe(x, values);
    // de(j) = partial_j of the coframe matrix.
    std::vector<std::vector<Point>> de(n);
    for (int j = 0; j < n; ++j) {
      Point xp = x, xm = x;
      xp[j] += step;
      xm[j] -= step;
      const auto ep = model.coframe(xp, values);
      const auto em = model.coframe(xm, values);
      de[j] = std::vector<Point>(n, Point(n));
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) de[j][i][k] = (ep[i][k] - em[i][k]) / (2 * step);
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
          const long double lhs = de[j][i][k] - de[k][i][j];
          long double rhs = 0;
          for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q)
              if (d[i][p][q] != 0) rhs += d[i][p][q] * (e[p][j] * e[q][k] - e[p][k] * e[q][j]);
          out.max_deviation = std::max(out.max_deviation, std::fabs(lhs - rhs));
        }
      }
    }
  }
  return out;
}

long double associativity_deviation(const GroupModel& model, const NumericAssignment& values, int samples,
                                    std::uint32_t seed) {
  std::mt19937 rng(seed);
  long double worst = 0;
  for (int s = 0; s < samples; ++s) {
    const Point x = random_point(rng, model.dim());
    const Point y = random_point(rng, model.dim());
    const Point z = random_point(rng, model.dim());
    const Point l = model.product(model.product(x, y, values), z, values);
    const Point r = model.product(x, model.product(y, z, values), values);
    for (int i = 0; i < model.dim(); ++i) worst = std::max(worst, std::fabs(l[i] - r[i]));
  }
  return worst;
}

long double identity_deviation(const GroupModel& model, const NumericAssignment& values, int samples,
                               std::uint32_t seed) {
  std::mt19937 rng(seed);
  long double worst = 0;
  const Point e = model.identity();
  for (int s = 0; s < samples; ++s) {
    const Point x = random_point(rng, model.dim());
    const Point l = model.product(e, x, values);
    const Point r = model.product(x, e, values);
    for (int i = 0; i < model.dim(); ++i) worst = std::max(worst, std::fabs(l[i] - x[i]) + std::fabs(r[i] - x[i]));
  }
  return worst;
}

long double left_invariance_deviation(const GroupModel& model, const NumericAssignment& values, int samples,
                                      long double step, std::uint32_t seed) {
  const int n = model.dim();
  std::mt19937 rng(seed);
  long double worst = 0;
  for (int s = 0; s < samples; ++s) {
    const Point g = random_point(rng, n);
    const Point x = random_point(rng, n);
    // jac[a][b] = d(gx)_a / dx_b
    std::vector<Point> jac(n, Point(n));
    for (int b = 0; b < n; ++b) {
      Point xp = x, xm = x;
      xp[b] += step;
      xm[b] -= step;
      const Point fp = model.product(g, xp, values);
      const Point fm = model.product(g, xm, values);
      for (int a = 0; a < n; ++a) jac[a][b] = (fp[a] - fm[a]) / (2 * step);
    }
    const auto at_gx = model.coframe(model.product(g, x, values), values);
    const auto at_x = model.coframe(x, values);
    for (int i = 0; i < n; ++i) {
      for (int b = 0; b < n; ++b) {
        long double pulled = 0;
        for (int a = 0; a < n; ++a) pulled += at_gx[i][a] * jac[a][b];
        worst = std::max(worst, std::fabs(pulled - at_x[i][b]));
      }
    }
  }
  return worst;
}

}  // namespace gkcheck
