#pragma once

#include "pms/arzela_ascoli.hpp"
#include "pms/error.hpp"
#include "pms/levy.hpp"
#include "pms/lipschitz.hpp"
#include "pms/random.hpp"
#include "pms/space.hpp"
#include "pms/step_cdf.hpp"
#include "pms/triangle.hpp"
