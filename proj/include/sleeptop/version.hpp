#pragma once

#define SLEEPTOP_VERSION "1.0.0"
