#pragma once

#include "newman/analysis.hpp"
#include "newman/digits.hpp"
#include "newman/eval.hpp"
#include "newman/period.hpp"
#include "newman/transfer.hpp"
