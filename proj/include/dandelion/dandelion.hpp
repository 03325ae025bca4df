#pragma once

// Convenience include for the whole library.

#include "dandelion/analytics.hpp"
#include "dandelion/angles.hpp"
#include "dandelion/color.hpp"
#include "dandelion/errors.hpp"
#include "dandelion/geometry.hpp"
#include "dandelion/grid.hpp"
#include "dandelion/heatmap.hpp"
#include "dandelion/ingest.hpp"
#include "dandelion/numfmt.hpp"
#include "dandelion/png.hpp"
#include "dandelion/raster.hpp"
#include "dandelion/scene.hpp"
#include "dandelion/simulate.hpp"
#include "dandelion/svg.hpp"
#include "dandelion/track.hpp"
#include "dandelion/vec.hpp"
