#ifndef GSTOWER_GSTOWER_HPP
#define GSTOWER_GSTOWER_HPP

#include "gstower/error.hpp"
#include "gstower/rational.hpp"
#include "gstower/fp_free_algebra.hpp"
#include "gstower/group_word.hpp"
#include "gstower/magnus.hpp"
#include "gstower/presentation.hpp"
#include "gstower/finite_group.hpp"
#include "gstower/gs_polynomial.hpp"
#include "gstower/sign_analysis.hpp"
#include "gstower/tower.hpp"
#include "gstower/io.hpp"

#endif  // GSTOWER_GSTOWER_HPP
