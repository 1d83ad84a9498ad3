#pragma once

#include "twalex/criterion.hpp"
#include "twalex/error.hpp"
#include "twalex/fingrp.hpp"
#include "twalex/laurent.hpp"
#include "twalex/polymat.hpp"
#include "twalex/presentation.hpp"
#include "twalex/report.hpp"
#include "twalex/torus.hpp"
#include "twalex/twisted.hpp"
#include "twalex/word.hpp"
