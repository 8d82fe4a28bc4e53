#ifndef CORANK_CORANK_HPP_
#define CORANK_CORANK_HPP_

#include "corank/adapted_frame.hpp"
#include "corank/analysis.hpp"
#include "corank/associated.hpp"
#include "corank/directions.hpp"
#include "corank/error.hpp"
#include "corank/forms.hpp"
#include "corank/germ.hpp"
#include "corank/heights.hpp"
#include "corank/linalg.hpp"
#include "corank/oracle.hpp"
#include "corank/parabola.hpp"
#include "corank/parser.hpp"
#include "corank/poly.hpp"
#include "corank/rational.hpp"
#include "corank/report.hpp"
#include "corank/tolerances.hpp"
#include "corank/umbilic.hpp"

#endif  // CORANK_CORANK_HPP_
