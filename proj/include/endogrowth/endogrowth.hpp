#pragma once

#include "endogrowth/errors.hpp"
#include "endogrowth/io.hpp"
#include "endogrowth/model_core.hpp"
#include "endogrowth/simulate.hpp"
#include "endogrowth/special_functions.hpp"
#include "endogrowth/panel.hpp"
#include "endogrowth/econometrics.hpp"
#include "endogrowth/clustering.hpp"
#include "endogrowth/country_codes.hpp"
#include "endogrowth/data_pipeline.hpp"
