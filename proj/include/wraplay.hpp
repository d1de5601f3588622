#pragma once

#include "wraplay/autopan.hpp"
#include "wraplay/bench.hpp"
#include "wraplay/convex.hpp"
#include "wraplay/corpus.hpp"
#include "wraplay/errors.hpp"
#include "wraplay/geometry.hpp"
#include "wraplay/graph.hpp"
#include "wraplay/io.hpp"
#include "wraplay/layout.hpp"
#include "wraplay/metrics.hpp"
#include "wraplay/projection.hpp"
#include "wraplay/raster.hpp"
#include "wraplay/render.hpp"
#include "wraplay/rng.hpp"
