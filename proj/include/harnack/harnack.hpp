#pragma once

#include "harnack/core.hpp"
#include "harnack/domination.hpp"
#include "harnack/grid.hpp"
#include "harnack/hermitian.hpp"
#include "harnack/kernels.hpp"
#include "harnack/oracle.hpp"
#include "harnack/radii.hpp"
#include "harnack/serialize.hpp"
#include "harnack/shift.hpp"
#include "harnack/shift5.hpp"
#include "harnack/verify.hpp"
