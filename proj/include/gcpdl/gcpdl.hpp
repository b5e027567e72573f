#pragma once

#include "gcpdl/audit.hpp"
#include "gcpdl/chain.hpp"
#include "gcpdl/closure.hpp"
#include "gcpdl/filtration.hpp"
#include "gcpdl/formula.hpp"
#include "gcpdl/io.hpp"
#include "gcpdl/model.hpp"
#include "gcpdl/parser.hpp"
#include "gcpdl/printer.hpp"
#include "gcpdl/proofcheck.hpp"
#include "gcpdl/relations.hpp"
#include "gcpdl/sampler.hpp"
#include "gcpdl/schema.hpp"
#include "gcpdl/semantics.hpp"
