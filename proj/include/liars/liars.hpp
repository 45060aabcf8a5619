#pragma once

// Umbrella header: the full library surface.

#include "liars/bounds.hpp"
#include "liars/distance.hpp"
#include "liars/entropy.hpp"
#include "liars/graph.hpp"
#include "liars/harness.hpp"
#include "liars/interval.hpp"
#include "liars/oracle.hpp"
#include "liars/responders.hpp"
#include "liars/rng.hpp"
#include "liars/strategies.hpp"
#include "liars/transcript.hpp"
#include "liars/unbounded.hpp"
#include "liars/weights.hpp"
