// genvi - general variational inequality and coincidence point toolkit
// Copyright 2026 genvi contributors
// Licensed under Apache 2.0

#pragma once

#include "genvi/problem_io.hpp"

#include <optional>
#include <string>
#include <vector>

namespace genvi {

struct Demo {
  std::string name;
  std::string description;
  Json problem;
};

// Built-in worked instances, each a complete problem document.
const std::vector<Demo>& demo_catalog();
std::optional<Json> demo_problem(const std::string& name);

}  // namespace genvi
