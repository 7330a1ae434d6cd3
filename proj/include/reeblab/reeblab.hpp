#pragma once

// Convenience umbrella: pulls in the whole library.

#include "reeblab/biharmonic.hpp"
#include "reeblab/contact.hpp"
#include "reeblab/covariant.hpp"
#include "reeblab/curve.hpp"
#include "reeblab/errors.hpp"
#include "reeblab/fd.hpp"
#include "reeblab/frenet.hpp"
#include "reeblab/geometry.hpp"
#include "reeblab/helix_lab.hpp"
#include "reeblab/io.hpp"
#include "reeblab/jet.hpp"
#include "reeblab/linalg.hpp"
#include "reeblab/manifold.hpp"
#include "reeblab/models.hpp"
#include "reeblab/optimize.hpp"
#include "reeblab/quadrature.hpp"
#include "reeblab/reporting.hpp"
#include "reeblab/rng.hpp"
