#pragma once

#include "zcs/bigint.hpp"
#include "zcs/coset.hpp"
#include "zcs/curves.hpp"
#include "zcs/ec.hpp"
#include "zcs/error.hpp"
#include "zcs/field.hpp"
#include "zcs/hash.hpp"
#include "zcs/hilbert.hpp"
#include "zcs/jacobian.hpp"
#include "zcs/json_io.hpp"
#include "zcs/local.hpp"
#include "zcs/modular.hpp"
#include "zcs/mumford.hpp"
#include "zcs/parallel.hpp"
#include "zcs/period_index.hpp"
#include "zcs/poly.hpp"
#include "zcs/resultant.hpp"
#include "zcs/search.hpp"
#include "zcs/sieve.hpp"
