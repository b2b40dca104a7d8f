# contispine exporters module
