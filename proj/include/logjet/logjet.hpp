#pragma once

#include "logjet/bounds.hpp"
#include "logjet/fermat.hpp"
#include "logjet/jet.hpp"
#include "logjet/linalg.hpp"
#include "logjet/logconn.hpp"
#include "logjet/multiindex.hpp"
#include "logjet/parse.hpp"
#include "logjet/poly.hpp"
#include "logjet/ratfunc.hpp"
#include "logjet/rational.hpp"
#include "logjet/rng.hpp"
#include "logjet/series.hpp"
#include "logjet/tower.hpp"
#include "logjet/verify.hpp"
