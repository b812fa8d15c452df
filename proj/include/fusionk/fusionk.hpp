#pragma once

// Umbrella header.

#include "fusionk/bigint.hpp"
#include "fusionk/closed_form.hpp"
#include "fusionk/ddouble.hpp"
#include "fusionk/fusion_ring.hpp"
#include "fusionk/graphs.hpp"
#include "fusionk/intpoly.hpp"
#include "fusionk/matrix_model.hpp"
#include "fusionk/spectral.hpp"
