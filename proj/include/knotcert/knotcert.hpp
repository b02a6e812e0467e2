#pragma once

// Umbrella header for the knotcert library.

#include "knotcert/braid.hpp"
#include "knotcert/cache.hpp"
#include "knotcert/catalog.hpp"
#include "knotcert/certify.hpp"
#include "knotcert/coloring.hpp"
#include "knotcert/constructors.hpp"
#include "knotcert/coset.hpp"
#include "knotcert/dihedral_product.hpp"
#include "knotcert/finite_group.hpp"
#include "knotcert/fox.hpp"
#include "knotcert/laurent.hpp"
#include "knotcert/presentation.hpp"
#include "knotcert/report.hpp"
#include "knotcert/snf.hpp"
#include "knotcert/word.hpp"
