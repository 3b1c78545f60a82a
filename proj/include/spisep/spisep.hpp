#pragma once

#include "catalogue.hpp"
#include "constructions.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "matrix.hpp"
#include "sssp.hpp"
#include "symplectic.hpp"
#include "zero_forcing.hpp"
