#pragma once

// Exact modular data of affine Kac-Moody algebras, their fusion rings,
// closed-form link invariants, and machine verification of the Galois
// relations they satisfy.

#include <galink/cyclotomic.hpp>
#include <galink/fusion.hpp>
#include <galink/galois_action.hpp>
#include <galink/invariants.hpp>
#include <galink/io.hpp>
#include <galink/modular_data.hpp>
#include <galink/numeric.hpp>
#include <galink/relations.hpp>
#include <galink/rootsys.hpp>
