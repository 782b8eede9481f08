#pragma once

#include "bjq/error.hpp"
#include "bjq/fourier.hpp"
#include "bjq/gabor.hpp"
#include "bjq/ghost.hpp"
#include "bjq/grid.hpp"
#include "bjq/io.hpp"
#include "bjq/quadrature.hpp"
#include "bjq/quantize.hpp"
#include "bjq/selfcheck.hpp"
#include "bjq/signal.hpp"
#include "bjq/special.hpp"
#include "bjq/spectral.hpp"
#include "bjq/symclass.hpp"
#include "bjq/transforms.hpp"
