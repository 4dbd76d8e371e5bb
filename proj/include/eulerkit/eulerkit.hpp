#pragma once

#include "eulerkit/rational.hpp"
#include "eulerkit/matrix.hpp"
#include "eulerkit/fincat.hpp"
#include "eulerkit/magnitude.hpp"
#include "eulerkit/higher.hpp"
#include "eulerkit/simplicial.hpp"
#include "eulerkit/io.hpp"
