#pragma once

#include "pea/checked.hpp"
#include "pea/cone_spec.hpp"
#include "pea/descriptor.hpp"
#include "pea/element.hpp"
#include "pea/enumerate.hpp"
#include "pea/error.hpp"
#include "pea/finite_pea.hpp"
#include "pea/groups.hpp"
#include "pea/interval_pea.hpp"
#include "pea/lift.hpp"
#include "pea/nperfect.hpp"
#include "pea/po_group.hpp"
#include "pea/probes.hpp"
#include "pea/refinement.hpp"
#include "pea/riesz.hpp"
