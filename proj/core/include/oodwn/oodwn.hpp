#pragma once

#include "oodwn/chi2.hpp"
#include "oodwn/errors.hpp"
#include "oodwn/eval.hpp"
#include "oodwn/gaussian.hpp"
#include "oodwn/rng.hpp"
#include "oodwn/scoring.hpp"
#include "oodwn/synthetic.hpp"
#include "oodwn/tensor_io.hpp"
#include "oodwn/whitenoise.hpp"
