#pragma once

#include "kerrsim/analytic.hpp"
#include "kerrsim/dynamics.hpp"
#include "kerrsim/eit.hpp"
#include "kerrsim/errors.hpp"
#include "kerrsim/experiments.hpp"
#include "kerrsim/medium.hpp"
#include "kerrsim/pulse.hpp"
#include "kerrsim/spectral.hpp"
#include "kerrsim/two_photon.hpp"
#include "kerrsim/units.hpp"
