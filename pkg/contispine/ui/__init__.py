# contispine ui module
