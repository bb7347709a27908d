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

#include "doctest.h"
#include "steade/rng.hpp"
#include "steade/space.hpp"

#include <cmath>

using namespace steade;

namespace {

ParamSpace mixed_space() {
  return ParamSpace({ParamDef::real("lr", 1e-4, 1e-1, Warp::log10),
                     ParamDef::real("momentum", 0.0, 0.99),
                     ParamDef::integer("depth", 1, 12),
                     ParamDef::integer("width", 8, 1024, Warp::log10),
                     ParamDef::categorical("act", {"relu", "tanh", "gelu"})});
}

// Config drawn on the native grid: any real, integer values, any category.
Config random_config(const ParamSpace& space, Rng& rng) {
  Config c;
  for (const auto& p : space.params()) {
    switch (p.kind) {
      case ParamKind::real:
        if (p.warp == Warp::log10) {
          c[p.name] = std::pow(10.0, rng.uniform(std::log10(p.lower), std::log10(p.upper)));
        } else {
          c[p.name] = rng.uniform(p.lower, p.upper);
        }
        break;
      case ParamKind::integer: {
        const auto span = static_cast<std::uint64_t>(p.upper - p.lower) + 1;
        c[p.name] = static_cast<std::int64_t>(p.lower) + static_cast<std::int64_t>(rng.index(span));
        break;
      }
      case ParamKind::categorical:
        c[p.name] = p.categories[rng.index(p.categories.size())];
        break;
    }
  }
  return c;
}

}  // namespace

TEST_CASE("warp examples") {
  ParamSpace unit({ParamDef::real("x", 0.0, 1.0)});
  CHECK(unit.warp({{"x", 0.3}})[0] == doctest::Approx(0.3).epsilon(1e-15));

  ParamSpace logspace({ParamDef::real("x", 1e-3, 1e1, Warp::log10)});
  CHECK(logspace.warp({{"x", 1e-1}})[0] == doctest::Approx(0.5).epsilon(1e-14));

  ParamSpace cat({ParamDef::categorical("c", {"a", "b", "c"})});
  const Vector v = cat.warp({{"c", std::string("b")}});
  REQUIRE(v.size() == 3);
  CHECK(v[0] == 0.0);
  CHECK(v[1] == 1.0);
  CHECK(v[2] == 0.0);
}

TEST_CASE("unwarp examples") {
  ParamSpace ints({ParamDef::integer("n", 0, 10)});
  CHECK(std::get<std::int64_t>(ints.unwarp(Vector::Constant(1, 0.5)).at("n")) == 5);

  ParamSpace cat({ParamDef::categorical("c", {"a", "b", "c"})});
  CHECK(std::get<std::string>(cat.unwarp(Vector::Constant(3, 0.2)).at("c")) == "a");
  Vector tail_tie(3);
  tail_tie << 0.1, 0.7, 0.7;
  CHECK(std::get<std::string>(cat.unwarp(tail_tie).at("c")) == "b");
}

TEST_CASE("integer rounding is half-up on the grid") {
  ParamSpace ints({ParamDef::integer("n", 0, 10)});
  CHECK(std::get<std::int64_t>(ints.unwarp(Vector::Constant(1, 0.25)).at("n")) == 3);
  CHECK(std::get<std::int64_t>(ints.unwarp(Vector::Constant(1, 0.24)).at("n")) == 2);
  CHECK(std::get<std::int64_t>(ints.unwarp(Vector::Constant(1, 0.0)).at("n")) == 0);
  CHECK(std::get<std::int64_t>(ints.unwarp(Vector::Constant(1, 1.0)).at("n")) == 10);
}

TEST_CASE("dimension and offsets") {
  const auto space = mixed_space();
  CHECK(space.dimension() == 7);
  CHECK(space.offset(0) == 0);
  CHECK(space.offset(4) == 4);
}

TEST_CASE("round trip on 1000 random configs") {
  const auto space = mixed_space();
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const Config c = random_config(space, rng);
    const Vector v = space.warp(c);
    for (Eigen::Index j = 0; j < v.size(); ++j) {
      REQUIRE(v[j] >= 0.0);
      REQUIRE(v[j] <= 1.0);
    }
    const Config back = space.unwarp(v);
    REQUIRE(back.size() == c.size());
    for (const auto& [name, value] : c) {
      const auto& got = back.at(name);
      REQUIRE(got.index() == value.index());
      if (const auto* d = std::get_if<double>(&value)) {
        const double g = std::get<double>(got);
        REQUIRE(std::abs(g - *d) <= 1e-12 * std::abs(*d));
      } else {
        REQUIRE(got == value);
      }
    }
  }
}

TEST_CASE("warp of unwarp is identity on grid images") {
  const auto space = mixed_space();
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Vector v = space.warp(random_config(space, rng));
    const Vector again = space.warp(space.unwarp(v));
    REQUIRE((again - v).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("real coordinates are monotone in the native value") {
  for (Warp w : {Warp::linear, Warp::log10}) {
    ParamSpace space({ParamDef::real("x", 0.01, 100.0, w)});
    Rng rng(11);
    for (int trial = 0; trial < 500; ++trial) {
      double a = rng.uniform(0.01, 100.0);
      double b = rng.uniform(0.01, 100.0);
      if (a > b) std::swap(a, b);
      if (a == b) continue;
      REQUIRE(space.warp({{"x", a}})[0] < space.warp({{"x", b}})[0]);
    }
  }
}

TEST_CASE("warp errors") {
  const auto space = mixed_space();
  Rng rng(3);
  Config good = random_config(space, rng);

  Config out_of_bounds = good;
  out_of_bounds["momentum"] = 1.5;
  CHECK_THROWS_AS(space.warp(out_of_bounds), SpaceError);

  Config unknown = good;
  unknown["bogus"] = 1.0;
  CHECK_THROWS_AS(space.warp(unknown), SpaceError);

  Config non_positive = good;
  non_positive["lr"] = 0.0;
  CHECK_THROWS_AS(space.warp(non_positive), SpaceError);
  non_positive["lr"] = -1.0;
  CHECK_THROWS_AS(space.warp(non_positive), SpaceError);

  Config bad_category = good;
  bad_category["act"] = std::string("sigmoid");
  CHECK_THROWS_AS(space.warp(bad_category), SpaceError);

  Config missing = good;
  missing.erase("depth");
  CHECK_THROWS_AS(space.warp(missing), SpaceError);
}

TEST_CASE("unwarp errors") {
  const auto space = mixed_space();
  CHECK_THROWS_AS(space.unwarp(Vector::Constant(6, 0.5)), SpaceError);
  Vector v = Vector::Constant(7, 0.5);
  v[1] = 1.0 + 1e-10;
  CHECK_NOTHROW(space.unwarp(v));
  v[1] = 1.0 + 1e-8;
  CHECK_THROWS_AS(space.unwarp(v), SpaceError);
  v[1] = -1e-8;
  CHECK_THROWS_AS(space.unwarp(v), SpaceError);
}

TEST_CASE("definition errors") {
  CHECK_THROWS_AS(ParamSpace({ParamDef::real("x", 1.0, 1.0)}), SpaceError);
  CHECK_THROWS_AS(ParamSpace({ParamDef::real("x", 0.0, 1.0, Warp::log10)}), SpaceError);
  CHECK_THROWS_AS(ParamSpace({ParamDef::categorical("c", {"a"})}), SpaceError);
  CHECK_THROWS_AS(ParamSpace({ParamDef::categorical("c", {"a", "a"})}), SpaceError);
  CHECK_THROWS_AS(ParamSpace({ParamDef::real("x", 0, 1), ParamDef::real("x", 0, 2)}), SpaceError);
  CHECK_THROWS_AS(ParamSpace(std::vector<ParamDef>{}), SpaceError);
}

TEST_CASE("from_json") {
  const auto doc = nlohmann::json::parse(R"([
    {"name": "lr", "kind": "real", "bounds": [1e-4, 1e-1], "warp": "log10"},
    {"name": "layers", "kind": "integer", "bounds": [1, 8]},
    {"name": "opt", "kind": "categorical", "categories": ["sgd", "adam"]}
  ])");
  const auto space = ParamSpace::from_json(doc);
  CHECK(space.dimension() == 4);
  CHECK(space.params()[0].warp == Warp::log10);
  CHECK(space.params()[1].kind == ParamKind::integer);
  const Config c = space.unwarp(Vector::Constant(4, 1.0));
  CHECK(std::get<double>(c.at("lr")) == 1e-1);
  CHECK(std::get<std::int64_t>(c.at("layers")) == 8);
  CHECK(std::get<std::string>(c.at("opt")) == "sgd");

  CHECK_THROWS_AS(ParamSpace::from_json(nlohmann::json::parse(R"({"name": "x"})")), SpaceError);
  CHECK_THROWS_AS(
      ParamSpace::from_json(nlohmann::json::parse(R"([{"name": "x", "kind": "complex"}])")),
      SpaceError);
  CHECK_THROWS_AS(ParamSpace::from_json(nlohmann::json::parse(
                      R"([{"name": "x", "kind": "real", "bounds": [0, 1], "warp": "ln"}])")),
                  SpaceError);
}
