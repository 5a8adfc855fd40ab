// Umbrella header for the cmx library.

#pragma once

#include "cmx/boundaries.hpp"
#include "cmx/cell.hpp"
#include "cmx/cochain.hpp"
#include "cmx/complex.hpp"
#include "cmx/hodge.hpp"
#include "cmx/incidence.hpp"
#include "cmx/io.hpp"
#include "cmx/json_io.hpp"
#include "cmx/spectral.hpp"
#include "cmx/synth.hpp"
#include "cmx/topology.hpp"
