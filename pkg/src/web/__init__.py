# Web interface components
