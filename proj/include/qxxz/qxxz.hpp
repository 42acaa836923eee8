#pragma once

#include "bethe.hpp"
#include "campaign.hpp"
#include "cgc.hpp"
#include "chain.hpp"
#include "copers.hpp"
#include "linops.hpp"
#include "metric.hpp"
#include "pathbasis.hpp"
#include "paths.hpp"
#include "qnum.hpp"
#include "tables.hpp"
#include "tldiag.hpp"
#include "version.hpp"
