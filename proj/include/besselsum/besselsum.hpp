#pragma once

#include "besselsum/bessel.hpp"
#include "besselsum/hypergeo.hpp"
#include "besselsum/oracle.hpp"
#include "besselsum/series_jj.hpp"
#include "besselsum/series_modified.hpp"
#include "besselsum/special_kernel.hpp"
#include "besselsum/summation.hpp"
#include "besselsum/types.hpp"
