#pragma once

#include "error.hpp"
#include "perm.hpp"
#include "intvec.hpp"
#include "report.hpp"
#include "domain.hpp"
#include "parallel.hpp"
#include "check.hpp"
#include "group.hpp"
#include "module.hpp"
#include "semidirect.hpp"
#include "rota_baxter.hpp"
#include "brace.hpp"
#include "perm_rb.hpp"
#include "ybe.hpp"
#include "tstruct.hpp"
#include "lie_numeric.hpp"
#include "bch.hpp"
