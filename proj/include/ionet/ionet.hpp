#pragma once

#include "ionet/classify.hpp"
#include "ionet/error.hpp"
#include "ionet/format.hpp"
#include "ionet/generate.hpp"
#include "ionet/lba.hpp"
#include "ionet/liveness.hpp"
#include "ionet/multiset.hpp"
#include "ionet/net.hpp"
#include "ionet/ordinarize.hpp"
#include "ionet/paste_down.hpp"
#include "ionet/slp.hpp"
#include "ionet/state_store.hpp"
#include "ionet/structure.hpp"
