/*
 * Copyright 2026 The STEADE Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "steade/space.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace steade {
namespace {

constexpr double kCubeTolerance = 1e-9;

double to_unit(const ParamDef& p, double value) {
  if (p.warp == Warp::log10) {
    return (std::log10(value) - std::log10(p.lower)) / (std::log10(p.upper) - std::log10(p.lower));
  }
  return (value - p.lower) / (p.upper - p.lower);
}

double from_unit(const ParamDef& p, double t) {
  if (p.warp == Warp::log10) {
    const double lo = std::log10(p.lower);
    const double hi = std::log10(p.upper);
    return std::pow(10.0, lo + t * (hi - lo));
  }
  return p.lower + t * (p.upper - p.lower);
}

void validate(const ParamDef& p) {
  if (p.name.empty()) throw SpaceError("parameter with empty name");
  if (p.kind == ParamKind::categorical) {
    std::set<std::string> unique(p.categories.begin(), p.categories.end());
    if (p.categories.size() < 2 || unique.size() != p.categories.size()) {
      throw SpaceError("categorical '" + p.name + "' needs at least 2 distinct categories");
    }
    return;
  }
  if (!(p.lower < p.upper)) throw SpaceError("parameter '" + p.name + "' needs lower < upper");
  if (p.warp == Warp::log10 && !(p.lower > 0.0)) {
    throw SpaceError("log10 warp on '" + p.name + "' needs a positive lower bound");
  }
  if (p.kind == ParamKind::integer &&
      (p.lower != std::floor(p.lower) || p.upper != std::floor(p.upper))) {
    throw SpaceError("integer '" + p.name + "' needs integral bounds");
  }
}

double numeric_value(const ParamDef& p, const ParamValue& value) {
  if (const auto* d = std::get_if<double>(&value)) {
    if (p.kind == ParamKind::integer && *d != std::floor(*d)) {
      throw SpaceError("non-integral value for integer '" + p.name + "'");
    }
    return *d;
  }
  if (const auto* i = std::get_if<std::int64_t>(&value)) return static_cast<double>(*i);
  throw SpaceError("string value for numeric parameter '" + p.name + "'");
}

}  // namespace

ParamDef ParamDef::real(std::string name, double lower, double upper, Warp warp) {
  return ParamDef{std::move(name), ParamKind::real, lower, upper, {}, warp};
}

ParamDef ParamDef::integer(std::string name, std::int64_t lower, std::int64_t upper, Warp warp) {
  return ParamDef{std::move(name), ParamKind::integer, static_cast<double>(lower),
                  static_cast<double>(upper), {}, warp};
}

ParamDef ParamDef::categorical(std::string name, std::vector<std::string> categories) {
  return ParamDef{std::move(name), ParamKind::categorical, 0.0, 0.0, std::move(categories),
                  Warp::linear};
}

ParamSpace::ParamSpace(std::vector<ParamDef> params) : params_(std::move(params)) {
  std::set<std::string> names;
  for (const auto& p : params_) {
    validate(p);
    if (!names.insert(p.name).second) throw SpaceError("duplicate parameter name '" + p.name + "'");
    offsets_.push_back(dimension_);
    dimension_ += p.width();
  }
  if (dimension_ == 0) throw SpaceError("empty parameter space");
}

ParamSpace ParamSpace::box(const Vector& lower, const Vector& upper) {
  if (lower.size() != upper.size()) throw SpaceError("box bound size mismatch");
  std::vector<ParamDef> params;
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    params.push_back(ParamDef::real("x" + std::to_string(i), lower[i], upper[i]));
  }
  return ParamSpace(std::move(params));
}

ParamSpace ParamSpace::from_json(const nlohmann::json& doc) {
  if (!doc.is_array()) throw SpaceError("space definition must be a JSON array");
  std::vector<ParamDef> params;
  for (const auto& entry : doc) {
    ParamDef p;
    p.name = entry.at("name").get<std::string>();
    const auto kind = entry.at("kind").get<std::string>();
    if (kind == "categorical") {
      p.kind = ParamKind::categorical;
      p.categories = entry.at("categories").get<std::vector<std::string>>();
    } else if (kind == "real" || kind == "integer") {
      p.kind = kind == "real" ? ParamKind::real : ParamKind::integer;
      const auto bounds = entry.at("bounds").get<std::vector<double>>();
      if (bounds.size() != 2) throw SpaceError("bounds of '" + p.name + "' must have 2 entries");
      p.lower = bounds[0];
      p.upper = bounds[1];
      const auto warp = entry.value("warp", std::string("linear"));
      if (warp == "log10") {
        p.warp = Warp::log10;
      } else if (warp != "linear") {
        throw SpaceError("unknown warp '" + warp + "'");
      }
    } else {
      throw SpaceError("unknown parameter kind '" + kind + "'");
    }
    params.push_back(std::move(p));
  }
  return ParamSpace(std::move(params));
}

Vector ParamSpace::warp(const Config& config) const {
  for (const auto& [name, value] : config) {
    const bool known = std::any_of(params_.begin(), params_.end(),
                                   [&](const ParamDef& p) { return p.name == name; });
    if (!known) throw SpaceError("unknown parameter '" + name + "'");
  }
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dimension_));
  for (std::size_t k = 0; k < params_.size(); ++k) {
    const auto& p = params_[k];
    const auto it = config.find(p.name);
    if (it == config.end()) throw SpaceError("missing parameter '" + p.name + "'");
    const auto at = static_cast<Eigen::Index>(offsets_[k]);
    if (p.kind == ParamKind::categorical) {
      const auto* s = std::get_if<std::string>(&it->second);
      if (s == nullptr) throw SpaceError("categorical '" + p.name + "' needs a string value");
      const auto pos = std::find(p.categories.begin(), p.categories.end(), *s);
      if (pos == p.categories.end()) {
        throw SpaceError("unknown category '" + *s + "' for '" + p.name + "'");
      }
      v[at + (pos - p.categories.begin())] = 1.0;
      continue;
    }
    const double x = numeric_value(p, it->second);
    if (p.warp == Warp::log10 && !(x > 0.0)) {
      throw SpaceError("non-positive value for log10 parameter '" + p.name + "'");
    }
    if (!(x >= p.lower && x <= p.upper)) {
      throw SpaceError("value of '" + p.name + "' outside its bounds");
    }
    v[at] = std::clamp(to_unit(p, x), 0.0, 1.0);
  }
  return v;
}

Config ParamSpace::unwarp(const Vector& v) const {
  if (static_cast<std::size_t>(v.size()) != dimension_) {
    throw SpaceError("cube vector has length " + std::to_string(v.size()) + ", expected " +
                     std::to_string(dimension_));
  }
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (!(v[j] >= -kCubeTolerance && v[j] <= 1.0 + kCubeTolerance)) {
      throw SpaceError("cube coordinate " + std::to_string(j) + " outside [0,1]");
    }
  }
  Config config;
  for (std::size_t k = 0; k < params_.size(); ++k) {
    const auto& p = params_[k];
    const auto at = static_cast<Eigen::Index>(offsets_[k]);
    switch (p.kind) {
      case ParamKind::categorical: {
        // argmax; strict comparison keeps the lowest index on ties
        std::size_t best = 0;
        for (std::size_t c = 1; c < p.categories.size(); ++c) {
          if (v[at + static_cast<Eigen::Index>(c)] > v[at + static_cast<Eigen::Index>(best)]) {
            best = c;
          }
        }
        config[p.name] = p.categories[best];
        break;
      }
      case ParamKind::integer: {
        const double t = std::clamp(v[at], 0.0, 1.0);
        const double rounded = std::floor(from_unit(p, t) + 0.5);
        config[p.name] = static_cast<std::int64_t>(std::clamp(rounded, p.lower, p.upper));
        break;
      }
      case ParamKind::real: {
        const double t = std::clamp(v[at], 0.0, 1.0);
        if (t == 0.0) {
          config[p.name] = p.lower;
        } else if (t == 1.0) {
          config[p.name] = p.upper;
        } else {
          config[p.name] = std::clamp(from_unit(p, t), p.lower, p.upper);
        }
        break;
      }
    }
  }
  return config;
}

}  // namespace steade
