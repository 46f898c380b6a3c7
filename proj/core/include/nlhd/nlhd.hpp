#pragma once

#include "nlhd/batch.hpp"
#include "nlhd/color.hpp"
#include "nlhd/color_correct.hpp"
#include "nlhd/config.hpp"
#include "nlhd/decompose.hpp"
#include "nlhd/denoise.hpp"
#include "nlhd/enhance.hpp"
#include "nlhd/grouping.hpp"
#include "nlhd/haar.hpp"
#include "nlhd/image.hpp"
#include "nlhd/io.hpp"
#include "nlhd/matrix.hpp"
#include "nlhd/metrics.hpp"
#include "nlhd/pipeline.hpp"
