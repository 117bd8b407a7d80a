#pragma once

// Umbrella header for the sleeping-top analysis library.

#include "sleeptop/rotation.hpp"
#include "sleeptop/top.hpp"
#include "sleeptop/slice.hpp"
#include "sleeptop/spectrum.hpp"
#include "sleeptop/transitions.hpp"
#include "sleeptop/simulate.hpp"
