#pragma once

#include "tdtsw/axioms.hpp"
#include "tdtsw/batch.hpp"
#include "tdtsw/errors.hpp"
#include "tdtsw/fuzzy_core.hpp"
#include "tdtsw/inference.hpp"
#include "tdtsw/relations.hpp"
#include "tdtsw/report.hpp"
#include "tdtsw/rule_dsl.hpp"
#include "tdtsw/rulebase.hpp"
