// Umbrella header for the truncated Toeplitz/Hankel operator library.
#ifndef TRUNCOP_TRUNCOP_HPP
#define TRUNCOP_TRUNCOP_HPP

#include "truncop/core.hpp"
#include "truncop/polynomial.hpp"
#include "truncop/quadrature.hpp"
#include "truncop/blaschke.hpp"
#include "truncop/rational.hpp"
#include "truncop/modelspace.hpp"
#include "truncop/operators.hpp"
#include "truncop/clark.hpp"
#include "truncop/calculus.hpp"
#include "truncop/classify.hpp"
#include "truncop/products.hpp"
#include "truncop/io.hpp"
#include "truncop/instance.hpp"
#include "truncop/trials.hpp"
#include "truncop/harness.hpp"

#endif  // TRUNCOP_TRUNCOP_HPP
