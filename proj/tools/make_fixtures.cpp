/**
 * Copyright 2026 The multinet Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
// Writes the synthetic edge lists shipped in data/.
//
//   make_fixtures <out-dir>

#include <filesystem>
#include <iostream>

#include "multinet/error.hpp"
#include "multinet/graph.hpp"
#include "multinet/synthetic.hpp"

int main(int argc, char** argv) {
  namespace fs = std::filesystem;
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <out-dir>\n";
    return 1;
  }
  const fs::path dir = argv[1];
  try {
    fs::create_directories(dir);

    multinet::ProfileConfig profile;
    profile.seed = 279;
    multinet::MultiplexGraph worm = multinet::profile_multiplex(profile);
    multinet::save_multiplex(worm, dir / "celegans_profile.edges");

    multinet::PlantedConfig planted;
    planted.layers = 2;
    planted.seed = 2;
    multinet::MultiplexGraph sbm = multinet::planted_multiplex(planted);
    multinet::save_multiplex(sbm, dir / "planted_2layer.edges");

    std::cout << "celegans_profile: " << worm.num_nodes() << " nodes, " << worm.num_edges() << " edges\n"
              << "planted_2layer: " << sbm.num_nodes() << " nodes, " << sbm.num_edges() << " edges\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
