#pragma once

#include "expfam/configuration.hpp"
#include "expfam/dataset.hpp"
#include "expfam/error.hpp"
#include "expfam/family.hpp"
#include "expfam/inference.hpp"
#include "expfam/io.hpp"
#include "expfam/learning.hpp"
#include "expfam/oracle.hpp"
#include "expfam/params.hpp"
#include "expfam/variable.hpp"
