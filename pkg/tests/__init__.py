# fregress tests
