#pragma once

#include "bayesmv/cholesky.hpp"
#include "bayesmv/error.hpp"
#include "bayesmv/frontier.hpp"
#include "bayesmv/moments.hpp"
#include "bayesmv/portfolio.hpp"
#include "bayesmv/predictive.hpp"
#include "bayesmv/random.hpp"
