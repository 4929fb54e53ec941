#pragma once
// Umbrella header for the in-place associative integer sorting library.

#include "drivers.hpp"      // IWYU pragma: export
#include "harness.hpp"      // IWYU pragma: export
#include "phases.hpp"       // IWYU pragma: export
#include "range_index.hpp"  // IWYU pragma: export
#include "word_model.hpp"   // IWYU pragma: export
