#pragma once
// Umbrella header: discrete pseudospherical surfaces from discrete
// potentials via exact loop-group factorization and the Sym formula.

#include "birkhoff.hpp"
#include "core.hpp"
#include "dalembert.hpp"
#include "factors.hpp"
#include "hirota.hpp"
#include "job.hpp"
#include "obj_io.hpp"
#include "parallel.hpp"
#include "potentials.hpp"
#include "sym.hpp"
#include "transitions.hpp"
#include "verify.hpp"
