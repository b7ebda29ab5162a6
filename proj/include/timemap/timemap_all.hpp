#pragma once

#include "timemap/error.hpp"
#include "timemap/io.hpp"
#include "timemap/nonlinearity.hpp"
#include "timemap/numerics.hpp"
#include "timemap/solution.hpp"
#include "timemap/spectral.hpp"
#include "timemap/timemap.hpp"
#include "timemap/verify.hpp"
