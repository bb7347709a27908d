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

#ifndef STEADE_SPACE_HPP
#define STEADE_SPACE_HPP

#include "steade/common.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace steade {

enum class ParamKind { real, integer, categorical };
enum class Warp { linear, log10 };

struct ParamDef {
  std::string name;
  ParamKind kind = ParamKind::real;
  double lower = 0.0;
  double upper = 1.0;
  std::vector<std::string> categories;
  Warp warp = Warp::linear;

  static ParamDef real(std::string name, double lower, double upper, Warp warp = Warp::linear);
  static ParamDef integer(std::string name, std::int64_t lower, std::int64_t upper,
                          Warp warp = Warp::linear);
  static ParamDef categorical(std::string name, std::vector<std::string> categories);

  // Number of unit-cube coordinates this parameter occupies.
  std::size_t width() const { return kind == ParamKind::categorical ? categories.size() : 1; }
};

using ParamValue = std::variant<double, std::int64_t, std::string>;
using Config = std::map<std::string, ParamValue>;

class SpaceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Search space with a bijection onto [0,1]^D. Reals and integers get one
// coordinate each (affine after an optional log10), categoricals a one-hot
// block. Immutable after construction.
class ParamSpace {
 public:
  explicit ParamSpace(std::vector<ParamDef> params);

  // All-real box with linear warps named x0, x1, ...
  static ParamSpace box(const Vector& lower, const Vector& upper);

  // Array of {"name", "kind", "bounds" | "categories", "warp"}.
  static ParamSpace from_json(const nlohmann::json& doc);

  std::size_t dimension() const { return dimension_; }
  const std::vector<ParamDef>& params() const { return params_; }
  std::size_t offset(std::size_t param_index) const { return offsets_[param_index]; }

  Vector warp(const Config& config) const;
  Config unwarp(const Vector& v) const;

 private:
  std::vector<ParamDef> params_;
  std::vector<std::size_t> offsets_;
  std::size_t dimension_ = 0;
};

}  // namespace steade

#endif  // STEADE_SPACE_HPP
