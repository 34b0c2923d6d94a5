#pragma once

#include "sosq/certificate.hpp"
#include "sosq/errors.hpp"
#include "sosq/exactify.hpp"
#include "sosq/factor.hpp"
#include "sosq/lifting.hpp"
#include "sosq/matrix.hpp"
#include "sosq/numeric.hpp"
#include "sosq/parse.hpp"
#include "sosq/poly.hpp"
#include "sosq/rational.hpp"
#include "sosq/ratpoly.hpp"
