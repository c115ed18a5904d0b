#pragma once

#include "lienil/error.hpp"
#include "lienil/field.hpp"
#include "lienil/matrix.hpp"
#include "lienil/subspace.hpp"
#include "lienil/algebra.hpp"
#include "lienil/random.hpp"
#include "lienil/report.hpp"
#include "lienil/lie.hpp"
#include "lienil/constructions.hpp"
#include "lienil/structure.hpp"
#include "lienil/theorems.hpp"
#include "lienil/zoo.hpp"
#include "lienil/explorer.hpp"
#include "lienil/spec_io.hpp"
