#pragma once

#include "dyrc/config.hpp"
#include "dyrc/dynamics.hpp"
#include "dyrc/error.hpp"
#include "dyrc/experiment.hpp"
#include "dyrc/graph.hpp"
#include "dyrc/io.hpp"
#include "dyrc/metrics.hpp"
#include "dyrc/random_graph.hpp"
#include "dyrc/reservoir.hpp"
#include "dyrc/rng.hpp"
#include "dyrc/spectral.hpp"
#include "dyrc/visibility.hpp"
