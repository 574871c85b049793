// Copyright 2026 The sse-memory Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SSE_TESTS_FIXTURES_HPP
#define SSE_TESTS_FIXTURES_HPP

#include <string>

#include "sse/game_io.hpp"

namespace sse::testing {

inline GameGraph load_fixture(const std::string& name) {
  return load_game(std::string(SSE_GAMES_DIR) + "/" + name + ".game").game;
}

inline NodeId id(const GameGraph& g, const std::string& name) { return *g.find(name); }

inline Rational q(long num, long den = 1) { return make_rational(num, den); }

}  // namespace sse::testing

#endif  // SSE_TESTS_FIXTURES_HPP
