# Matrix word certifier
