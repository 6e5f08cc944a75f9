#pragma once

#include "xxcorr/error.hpp"
#include "xxcorr/exact_diag.hpp"
#include "xxcorr/free_fermion.hpp"
#include "xxcorr/measures.hpp"
#include "xxcorr/parallel.hpp"
#include "xxcorr/quadrature.hpp"
#include "xxcorr/rdm.hpp"
#include "xxcorr/scan.hpp"
#include "xxcorr/validate.hpp"
#include "xxcorr/wick.hpp"
