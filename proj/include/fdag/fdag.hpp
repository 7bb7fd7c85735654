// Umbrella header.
#pragma once

#include "fdag/dag.hpp"
#include "fdag/enumerate.hpp"
#include "fdag/fishburn.hpp"
#include "fdag/patterns.hpp"
#include "fdag/trees.hpp"
#include "fdag/words.hpp"
