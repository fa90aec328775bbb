#pragma once

#include "regvar/asymptotics.hpp"
#include "regvar/beck.hpp"
#include "regvar/errors.hpp"
#include "regvar/haar.hpp"
#include "regvar/kernels.hpp"
#include "regvar/popa.hpp"
#include "regvar/quadrature.hpp"
#include "regvar/sampled_function.hpp"
#include "regvar/subadd.hpp"
