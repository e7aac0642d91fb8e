#pragma once

#include "assembly.hpp"
#include "axial.hpp"
#include "ball.hpp"
#include "epsvar.hpp"
#include "errors.hpp"
#include "grid.hpp"
#include "io.hpp"
#include "linalg.hpp"
#include "mode.hpp"
#include "parallel.hpp"
#include "rootfind.hpp"
#include "specfun.hpp"
#include "transverse.hpp"
#include "vec.hpp"
#include "verify.hpp"
