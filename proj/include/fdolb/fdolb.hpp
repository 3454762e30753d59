#pragma once

#include "cauchy.hpp"
#include "descent.hpp"
#include "ext.hpp"
#include "gauge.hpp"
#include "rng.hpp"
#include "serialize.hpp"
