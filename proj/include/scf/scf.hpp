#pragma once

// umbrella header

#include "apps.hpp"
#include "classify.hpp"
#include "codifferent.hpp"
#include "field.hpp"
#include "indecomposables.hpp"
#include "lattice.hpp"
#include "numeric.hpp"
#include "scan.hpp"
